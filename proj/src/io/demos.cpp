#include "infodyn/io/demos.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "infodyn/calculator.hpp"
#include "infodyn/discretise.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/io/eca.hpp"

namespace infodyn::io {

namespace {

constexpr double kTentSlope = 1.99999;

double apply_map(MapKind kind, double x) {
  if (kind == MapKind::tent) return x < 0.5 ? kTentSlope * x : kTentSlope * (1.0 - x);
  return 2.0 - x * x;
}

RealMatrix column_of(const std::vector<double>& v) { return RealMatrix::column(v); }

DataTable table(std::vector<std::string> names, const std::vector<std::vector<double>>& columns) {
  DataTable t;
  t.names = std::move(names);
  t.values = RealMatrix(columns.empty() ? 0 : columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) t.values.set_column(j, columns[j]);
  return t;
}

DataTable grid_table(const RealMatrix& grid) {
  DataTable t;
  for (std::size_t c = 0; c < grid.cols(); ++c) t.names.push_back("cell" + std::to_string(c));
  t.values = grid;
  return t;
}

double transfer_entropy(Estimator e, const std::vector<double>& src, const std::vector<double>& dst, int u) {
  Calculator c(Measure::te, e);
  c.set_property("u", std::to_string(u));
  c.initialise();
  c.add_observations(column_of(src), column_of(dst));
  return c.compute().average;
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return true;
}

DemoReport schreiber(MapKind kind, std::uint64_t seed) {
  const std::vector<double> eps{0.0, 0.02, 0.04, 0.06, 0.08, 0.10};
  const std::size_t trials = 10;
  std::vector<double> means, sds;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::vector<double> te;
    for (std::size_t trial = 0; trial < trials; ++trial)
      te.push_back(lattice_te(coupled_map_lattice(kind, eps[i], 100, 1000, 1000, seed + 1000 * i + trial)));
    means.push_back(mean(te));
    sds.push_back(sample_std(te));
  }
  DemoReport r;
  r.name = kind == MapKind::tent ? "schreiber_tent" : "schreiber_ulam";
  r.tables.emplace_back(r.name, table({"epsilon", "te_mean_bits", "te_std_bits"}, {eps, means, sds}));
  std::ostringstream s;
  s << r.name << ": transfer entropy from site m-1 to site m on a ring of 100 "
    << (kind == MapKind::tent ? "tent" : "Ulam") << " maps, 1000 steps after a 1000-step transient, "
    << trials << " trials per coupling, two-symbol partition, k = 1.\n";
  for (std::size_t i = 0; i < eps.size(); ++i)
    s << "  epsilon " << format_real(eps[i]) << ": " << format_real(means[i]) << " bits (sd " << format_real(sds[i])
      << ")\n";
  s << "monotone nondecreasing in epsilon: " << (nondecreasing(means) ? "yes" : "no") << "\n";
  r.summary = s.str();
  return r;
}

DemoReport lag_sweep_demo(std::uint64_t seed) {
  const LagSweep sweep = lag_sweep(5000, 5, seed);
  std::vector<double> lags(sweep.lags.begin(), sweep.lags.end());
  DemoReport r;
  r.name = "lag_sweep";
  r.tables.emplace_back("lag_sweep",
                        table({"u", "te_discrete_bits", "te_ksg_nats", "te_kernel_bits"},
                              {lags, sweep.discrete, sweep.ksg, sweep.kernel}));
  auto argmax = [&](const std::vector<double>& v) {
    return sweep.lags[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())];
  };
  std::ostringstream s;
  s << "lag_sweep: sources coupled to destinations with delay 3, N = 5000, TE for u = 1..5.\n"
    << "  argmax discrete: " << argmax(sweep.discrete) << "\n"
    << "  argmax ksg: " << argmax(sweep.ksg) << "\n"
    << "  argmax kernel: " << argmax(sweep.kernel) << "\n";
  r.summary = s.str();
  return r;
}

DemoReport null_study_demo(std::uint64_t seed) {
  const NullStudy study = null_study(1000, 5000, seed);
  std::vector<double> index(study.surrogates.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
  DemoReport r;
  r.name = "null_study";
  r.tables.emplace_back("null_study", table({"surrogate", "mi_bits"}, {index, study.surrogates}));
  std::ostringstream s;
  s << "null_study: discrete MI of independent binary series, N = 1000, 5000 permutation surrogates.\n"
    << "  measured MI: " << format_real(study.actual) << " bits\n"
    << "  surrogate mean: " << format_real(study.surrogate_mean) << " bits\n"
    << "  analytic mean 1/(2 N ln 2): " << format_real(study.analytic_mean) << " bits\n"
    << "  ratio: " << format_real(study.surrogate_mean / study.analytic_mean) << "\n";
  r.summary = s.str();
  return r;
}

DemoReport ca_demo(std::uint64_t seed) {
  EcaConfig cfg;
  cfg.rule = 54;
  cfg.width = 35;
  cfg.steps = 600;
  cfg.seed = seed;
  const SymbolMatrix grid = eca_run(cfg);
  DemoReport r;
  r.name = "ca";
  r.tables.emplace_back("ca_states", grid_table(matrix_cast<double>(grid)));
  r.tables.emplace_back("ca_particles", grid_table(matrix_cast<double>(rule54_particles(grid))));
  for (const auto& [m, stem] : {std::pair{CaMeasure::ais, "ca_ais"}, std::pair{CaMeasure::te_right, "ca_te_right"},
                                std::pair{CaMeasure::te_left, "ca_te_left"},
                                std::pair{CaMeasure::separable, "ca_separable"}})
    r.tables.emplace_back(stem, grid_table(ca_profile(cfg, m, 16).local));
  const CaGliderStats st = ca_glider_stats(35, 600, 16, 10, seed);
  std::ostringstream s;
  s << "ca: rule 54, width 35, 600 steps, k = 16; grids are from the run with seed " << seed
    << "; statistics pool 10 runs.\n"
    << "  right-moving glider cells: " << st.glider_cells << "\n"
    << "  mean rightward local TE on them: " << format_real(st.glider_mean) << " bits\n"
    << "  grid mean: " << format_real(st.grid_mean) << " bits, grid std: " << format_real(st.grid_std) << " bits\n"
    << "  rule 204 control TE: right " << format_real(st.control_right) << ", left " << format_real(st.control_left)
    << " bits\n";
  r.summary = s.str();
  return r;
}

}  // namespace

RealMatrix coupled_map_lattice(MapKind kind, double epsilon, std::size_t sites, std::size_t steps,
                               std::size_t transient, std::uint64_t seed) {
  if (sites < 2) throw UsageError("a lattice needs at least two sites");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> init(kind == MapKind::tent ? 0.0 : -2.0, kind == MapKind::tent ? 1.0 : 2.0);
  std::vector<double> x(sites), next(sites);
  for (auto& v : x) v = init(rng);
  RealMatrix out(steps, sites);
  for (std::size_t n = 0; n < transient + steps; ++n) {
    for (std::size_t m = 0; m < sites; ++m)
      next[m] = apply_map(kind, epsilon * x[(m + sites - 1) % sites] + (1.0 - epsilon) * x[m]);
    std::swap(x, next);
    if (n >= transient) std::copy(x.begin(), x.end(), out.row(n - transient).begin());
  }
  return out;
}

double lattice_te(const RealMatrix& lattice) {
  Calculator c(Measure::te, Estimator::discrete);
  c.set_property("bins", "2");
  c.initialise();
  const std::size_t w = lattice.cols();
  for (std::size_t m = 0; m < w; ++m)
    c.add_observations(lattice.select_columns(std::vector<std::size_t>{(m + w - 1) % w}),
                       lattice.select_columns(std::vector<std::size_t>{m}));
  return c.compute().average;
}

LagSweep lag_sweep(std::size_t n, int max_lag, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(0.5), flip(0.1);
  std::normal_distribution<double> normal;
  std::vector<double> bs(n), bd(n), x(n), y(n);
  for (auto& v : bs) v = bit(rng);
  for (auto& v : x) v = normal(rng);
  for (std::size_t t = 0; t < n; ++t) {
    bd[t] = t < 3 ? static_cast<double>(bit(rng)) : (flip(rng) ? 1.0 - bs[t - 3] : bs[t - 3]);
    y[t] = (t < 1 ? 0.0 : 0.4 * y[t - 1]) + (t < 3 ? 0.0 : 0.8 * x[t - 3]) + 0.6 * normal(rng);
  }
  LagSweep out;
  for (int u = 1; u <= max_lag; ++u) {
    out.lags.push_back(u);
    out.discrete.push_back(transfer_entropy(Estimator::discrete, bs, bd, u));
    out.ksg.push_back(transfer_entropy(Estimator::ksg, x, y, u));
    out.kernel.push_back(transfer_entropy(Estimator::kernel, x, y, u));
  }
  return out;
}

NullStudy null_study(std::size_t n, std::size_t n_surrogates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(0.5);
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = bit(rng);
  for (auto& v : b) v = bit(rng);
  Calculator c(Measure::mi, Estimator::discrete);
  c.set_property("alphabet", "2");
  c.initialise();
  c.add_observations(column_of(a), column_of(b));
  const NullDistribution null = c.compute_significance(n_surrogates, NullMethod::permutation, seed);
  NullStudy out;
  out.actual = null.actual;
  out.surrogates = null.surrogates;
  out.surrogate_mean = null.mean;
  out.analytic_mean = 1.0 / (2.0 * static_cast<double>(n) * std::numbers::ln2);
  return out;
}

CaGliderStats ca_glider_stats(std::size_t width, std::size_t steps, int k, std::size_t runs, std::uint64_t seed) {
  std::vector<SymbolMatrix> grids, controls;
  for (std::size_t i = 0; i < runs; ++i) {
    EcaConfig cfg;
    cfg.rule = 54;
    cfg.width = width;
    cfg.steps = steps;
    cfg.seed = seed + i;
    grids.push_back(eca_run(cfg));
    cfg.rule = 204;
    controls.push_back(eca_run(cfg));
  }
  const auto profiles = ca_profiles(grids, CaMeasure::te_right, k);
  CaGliderStats st;
  std::vector<double> all, glider;
  for (std::size_t i = 0; i < runs; ++i) {
    const SymbolMatrix right = right_moving(rule54_particles(grids[i]));
    const auto& p = profiles[i];
    for (std::size_t t = p.offset; t < p.local.rows(); ++t)
      for (std::size_t c = 0; c < width; ++c) {
        all.push_back(p.local(t, c));
        if (right(t, c)) glider.push_back(p.local(t, c));
      }
  }
  st.glider_cells = glider.size();
  st.glider_mean = glider.empty() ? 0.0 : mean(glider);
  st.grid_mean = mean(all);
  st.grid_std = sample_std(all);
  st.control_right = ca_profiles(controls, CaMeasure::te_right, k).front().average;
  st.control_left = ca_profiles(controls, CaMeasure::te_left, k).front().average;
  return st;
}

std::vector<std::string_view> demo_names() { return {"schreiber_tent", "schreiber_ulam", "lag_sweep", "null_study", "ca"}; }

DemoReport run_demo(std::string_view name, std::uint64_t seed) {
  if (name == "schreiber_tent") return schreiber(MapKind::tent, seed);
  if (name == "schreiber_ulam") return schreiber(MapKind::ulam, seed);
  if (name == "lag_sweep") return lag_sweep_demo(seed);
  if (name == "null_study") return null_study_demo(seed);
  if (name == "ca") return ca_demo(seed);
  throw UsageError("unknown demo '" + std::string(name) +
                   "' (schreiber_tent, schreiber_ulam, lag_sweep, null_study, ca)");
}

void write_report(const DemoReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [stem, t] : report.tables) write_table(dir / (stem + ".csv"), t, TableFormat::csv);
  std::ofstream out(dir / (report.name + "_summary.txt"));
  if (!out) throw DataError("cannot write into '" + dir.string() + "'");
  out << report.summary;
}

}  // namespace infodyn::io
