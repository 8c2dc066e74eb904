#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infodyn/calculator.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/io/demos.hpp"
#include "infodyn/io/eca.hpp"
#include "infodyn/io/table.hpp"
#include "json.hpp"

using namespace infodyn;
using json = nlohmann::ordered_json;

namespace {

constexpr int kDataExit = 1;
constexpr int kUsageExit = 2;

struct ComputeArgs {
  std::string measure, estimator, input, format = "csv", source, dest, cond, local_out;
  std::string surrogate_method = "permutation";
  std::vector<std::string> properties;
  long long alphabet = 0;
  std::size_t surrogates = 0;
  std::size_t comparisons = 1;
  std::uint64_t seed = 0;
  bool analytic_null = false;
};

json null_record(const NullDistribution& d, std::size_t comparisons) {
  json j;
  j["method"] = std::string(to_string(d.method));
  j["p_value"] = d.p_value;
  if (comparisons > 1) j["p_value_bonferroni"] = std::min(1.0, d.p_value * static_cast<double>(comparisons));
  j["mean"] = d.mean;
  j["std"] = d.std;
  j["t_score"] = d.t_score;
  if (d.method == NullMethod::analytic) {
    j["degrees_of_freedom"] = d.degrees_of_freedom;
  } else {
    j["n_surrogates"] = d.n_surrogates;
    j["count_at_least"] = d.count_at_least;
    j["seed"] = d.seed;
  }
  return j;
}

int run_compute(const ComputeArgs& a) {
  const io::DataTable table = io::read_table(std::filesystem::path(a.input), io::parse_format(a.format));
  Calculator calc(parse_measure(a.measure), parse_estimator(a.estimator));
  if (a.alphabet > 0) calc.set_property("alphabet", std::to_string(a.alphabet));
  for (const auto& p : a.properties) calc.properties().set_assignment(p);
  calc.initialise();
  const RealMatrix source = a.source.empty() ? RealMatrix() : table.select(a.source);
  const RealMatrix cond = a.cond.empty() ? RealMatrix() : table.select(a.cond);
  calc.add_observations(source, table.select(a.dest), cond);
  const MeasureResult r = calc.compute();

  json out;
  out["measure"] = std::string(to_string(calc.measure()));
  out["estimator"] = std::string(to_string(calc.estimator()));
  out["units"] = std::string(to_string(r.units));
  out["average"] = r.average;
  out["n_observations"] = r.n_observations;
  out["offset"] = r.offset;
  if (a.surrogates > 0) {
    const NullMethod method = a.surrogate_method == "rotation" ? NullMethod::rotation : NullMethod::permutation;
    const NullDistribution d = calc.compute_significance(a.surrogates, method, a.seed);
    out["p_value"] = d.p_value;
    out["null"] = null_record(d, a.comparisons);
  }
  if (a.analytic_null) {
    const NullDistribution d = calc.analytic_significance();
    if (!out.contains("p_value")) out["p_value"] = d.p_value;
    out["analytic_null"] = null_record(d, a.comparisons);
  }
  if (!a.local_out.empty()) {
    io::DataTable locals;
    locals.names = {"tuple", "local"};
    locals.values = RealMatrix(r.local.size(), 2);
    for (std::size_t i = 0; i < r.local.size(); ++i) {
      locals.values(i, 0) = static_cast<double>(i);
      locals.values(i, 1) = r.local[i];
    }
    io::write_table(std::filesystem::path(a.local_out), locals, io::TableFormat::csv);
    out["local_file"] = a.local_out;
  }
  std::cout << out.dump() << '\n';
  return 0;
}

int run_demo(const std::string& name, const std::string& dir, std::uint64_t seed) {
  const io::DemoReport report = io::run_demo(name, seed);
  io::write_report(report, dir);
  json out;
  out["demo"] = report.name;
  out["seed"] = seed;
  out["out"] = dir;
  json files = json::array();
  for (const auto& [stem, t] : report.tables) files.push_back(stem + ".csv");
  files.push_back(report.name + "_summary.txt");
  out["files"] = files;
  out["summary"] = report.summary;
  std::cout << out.dump() << '\n';
  return 0;
}

int run_ca(const io::EcaConfig& cfg, const std::string& measure, int k, const std::string& path) {
  const io::CaProfile p = io::ca_profile(cfg, io::parse_ca_measure(measure), k);
  io::DataTable t;
  for (std::size_t c = 0; c < p.local.cols(); ++c) t.names.push_back("cell" + std::to_string(c));
  t.values = p.local;
  io::write_table(std::filesystem::path(path), t, io::TableFormat::csv);
  json out;
  out["rule"] = cfg.rule;
  out["width"] = cfg.width;
  out["steps"] = cfg.steps;
  out["seed"] = cfg.seed;
  out["measure"] = measure;
  out["k"] = k;
  out["units"] = "bits";
  out["average"] = p.average;
  out["offset"] = p.offset;
  out["out"] = path;
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information dynamics of time series: entropies, mutual and transfer information, storage."};
  app.require_subcommand(1);

  ComputeArgs c;
  auto* compute = app.add_subcommand("compute", "Estimate one measure from a data file");
  compute->add_option("--measure", c.measure, "entropy|mi|cmi|multi|rate|ais|pi|te|cte|collective-te|separable")
      ->required();
  compute->add_option("--estimator", c.estimator, "discrete|gaussian|kernel|ksg|symbolic")->required();
  compute->add_option("--input", c.input, "Data file")->required();
  compute->add_option("--format", c.format, "csv|octave")->check(CLI::IsMember({"csv", "octave"}));
  compute->add_option("--source", c.source, "Source columns (names or 0-based indices, comma separated)");
  compute->add_option("--dest", c.dest, "Destination columns")->required();
  compute->add_option("--cond", c.cond, "Conditioning columns");
  compute->add_option("--alphabet", c.alphabet, "Alphabet size for discrete data")->check(CLI::Range(2LL, 1LL << 31));
  compute->add_option("-p,--property", c.properties, "Estimator property key=value (repeatable)");
  compute->add_option("--local", c.local_out, "Write local values to this CSV file");
  compute->add_option("--surrogates", c.surrogates, "Number of surrogates for a resampled null");
  compute->add_option("--seed", c.seed, "Seed of the surrogate schedule");
  compute->add_option("--surrogate-method", c.surrogate_method, "permutation|rotation")
      ->check(CLI::IsMember({"permutation", "rotation"}));
  compute->add_flag("--analytic-null", c.analytic_null, "Report the analytic chi-square null");
  compute->add_option("--comparisons", c.comparisons, "Number of tests for a Bonferroni-adjusted p-value")
      ->check(CLI::PositiveNumber);

  std::string demo_name, demo_out = ".";
  std::uint64_t demo_seed = 1;
  auto* demo = app.add_subcommand("demo", "Run a bundled demonstration");
  demo->add_option("name", demo_name, "schreiber_tent|schreiber_ulam|lag_sweep|null_study|ca")->required();
  demo->add_option("--out", demo_out, "Output directory");
  demo->add_option("--seed", demo_seed, "Seed of the synthetic data");

  io::EcaConfig eca;
  std::string ca_measure = "te_right", ca_out;
  int ca_k = 16;
  auto* ca = app.add_subcommand("ca", "Local information profile of an elementary cellular automaton");
  ca->add_option("--rule", eca.rule, "Rule number")->required();
  ca->add_option("--width", eca.width, "Number of cells")->required();
  ca->add_option("--steps", eca.steps, "Number of rows including the initial one")->required();
  ca->add_option("--measure", ca_measure, "ais|te_left|te_right|separable")->required();
  ca->add_option("-k", ca_k, "History length")->required();
  ca->add_option("--out", ca_out, "Output CSV grid")->required();
  ca->add_option("--seed", eca.seed, "Seed of the random initial row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*compute) return run_compute(c);
    if (*demo) return run_demo(demo_name, demo_out, demo_seed);
    return run_ca(eca, ca_measure, ca_k, ca_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataExit;
  }
}
