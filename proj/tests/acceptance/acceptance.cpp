// Acceptance suite: prints one PASS or FAIL line per criterion. Tolerances
// are pinned below. The exit status is 0 whenever the suite ran to the end,
// so a failing criterion is reported in the output rather than hidden by an
// aborted run; the final line counts the criteria that passed.

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "infodyn/calculator.hpp"
#include "infodyn/discrete/measures.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/gaussian/measures.hpp"
#include "infodyn/io/demos.hpp"
#include "infodyn/kernel/measures.hpp"
#include "infodyn/ksg/measures.hpp"
#include "infodyn/ksg/neighbours.hpp"

using namespace infodyn;

namespace {

// Criterion 1
constexpr double kCopyTol = 0.01;
constexpr double kCopySeconds = 1.0;
// Criterion 2
constexpr double kLocalTol = 1e-10;
constexpr double kGaussianLocalTol = 1e-8;
constexpr double kLocalSeconds = 30.0;
// Criterion 3
constexpr double kKsgMiTol = 0.03;
constexpr double kKlTol = 0.02;
// Criterion 4
constexpr double kGrangerTol = 1e-6;
// Criterion 5
constexpr double kNullMeanRelTol = 0.15;
constexpr double kKsAlpha = 0.01;
// Criterion 6
constexpr double kBruteTol = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int passed = 0;
int total = 0;

void report(int id, bool ok, const std::string& detail) {
  ++total;
  if (ok) ++passed;
  std::printf("criterion %d %s: %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

RealMatrix columns(const std::vector<std::vector<double>>& cols) {
  RealMatrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

SymbolMatrix symbol_columns(const std::vector<std::vector<int>>& cols) {
  SymbolMatrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

// ---------------------------------------------------------------- criterion 1

void binary_copy() {
  std::mt19937_64 rng(1);
  const std::size_t n = 100000;
  const auto src = testutil::random_symbols(rng, n, 2);
  std::vector<int> dst(n, 0);
  for (std::size_t t = 1; t < n; ++t) dst[t] = src[t - 1];
  const auto start = Clock::now();
  const double te = discrete::transfer_entropy(src, dst, Alphabet(2), EmbeddingSpec{}).average;
  const double secs = seconds_since(start);
  report(1, std::abs(te - 1.0) <= kCopyTol && secs < kCopySeconds,
         "binary copy TE " + fmt("%.6f", te) + " bits (want 1 +/- 0.01) in " + fmt("%.3f", secs) + " s (limit 1 s)");
}

// ---------------------------------------------------------------- criterion 2

struct Inputs {
  RealMatrix source, dest, cond;
};

/// Coupled inputs shaped for the argument roles of `m`. Discrete inputs hold
/// symbols in {0,1,2}; continuous inputs come from a coupled linear process.
Inputs make_inputs(Measure m, bool symbols, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(n), w(n), y(n), v(n);
  if (symbols) {
    std::uniform_int_distribution<int> sym(0, 2);
    std::bernoulli_distribution copy(0.7);
    for (std::size_t t = 0; t < n; ++t) {
      x[t] = sym(rng);
      w[t] = sym(rng);
      y[t] = t > 0 && copy(rng) ? x[t - 1] : sym(rng);
      v[t] = t > 0 && copy(rng) ? y[t - 1] : sym(rng);
    }
  } else {
    std::normal_distribution<double> g;
    for (std::size_t t = 0; t < n; ++t) {
      x[t] = g(rng);
      w[t] = g(rng);
      y[t] = t > 0 ? 0.5 * y[t - 1] + 0.4 * x[t - 1] + 0.3 * w[t - 1] + g(rng) : g(rng);
      v[t] = 0.6 * y[t] + g(rng);
    }
  }
  Inputs in;
  switch (m) {
    case Measure::multi:
      in.dest = columns({x, y, v});
      break;
    case Measure::mi:
    case Measure::te:
      in.source = columns({x});
      in.dest = columns({y});
      break;
    case Measure::cmi:
    case Measure::cte:
      in.source = columns({x});
      in.dest = columns({y});
      in.cond = columns({w});
      break;
    case Measure::collective_te:
    case Measure::separable:
      in.source = columns({x, w});
      in.dest = columns({y});
      break;
    default:
      in.dest = columns({y});
  }
  return in;
}

/// Difference between the mean of the Gaussian locals and the determinant
/// form: each entropy term H over d dimensions contributes -d/2N to the mean
/// of its locals, and the MI-type combinations cancel.
double gaussian_local_shift(Measure m, const Inputs& in, std::size_t n) {
  const double two_n = 2.0 * static_cast<double>(n);
  if (m == Measure::entropy) return -static_cast<double>(in.dest.cols()) / two_n;
  if (m == Measure::rate) return -static_cast<double>(in.dest.cols()) / two_n;
  return 0.0;
}

void local_average_consistency() {
  const std::array measures{Measure::entropy, Measure::mi,  Measure::cmi, Measure::multi,
                            Measure::rate,    Measure::ais, Measure::pi,  Measure::te,
                            Measure::cte,     Measure::collective_te, Measure::separable};
  const std::array estimators{Estimator::discrete, Estimator::gaussian, Estimator::kernel, Estimator::ksg,
                              Estimator::symbolic};
  const auto start = Clock::now();
  int instances = 0, failures = 0;
  double worst = 0.0;
  std::string worst_cell;
  for (const Estimator e : estimators) {
    const bool cheap = e == Estimator::discrete || e == Estimator::gaussian || e == Estimator::symbolic;
    for (const Measure m : measures) {
      if (e == Estimator::symbolic && m != Measure::entropy && m != Measure::ais && m != Measure::te) continue;
      for (std::uint64_t seed = 1; seed <= (cheap ? 2u : 1u); ++seed) {
        const std::size_t n = cheap ? 1000 : 400;
        const Inputs in = make_inputs(m, e == Estimator::discrete, n, 100 * seed + static_cast<std::uint64_t>(m));
        Calculator calc(m, e);
        if (e != Estimator::symbolic && m != Measure::mi && m != Measure::cmi && m != Measure::multi &&
            m != Measure::entropy) {
          calc.set_property("k", seed == 1 ? "2" : "1");
          calc.set_property("l", seed == 1 ? "1" : "2");
        }
        calc.initialise();
        calc.add_observations(in.source, in.dest, in.cond);
        const MeasureResult r = calc.compute();
        const double mean_local = mean(r.local);
        double expected = r.average, tol = kLocalTol;
        if (e == Estimator::gaussian) {
          expected += gaussian_local_shift(m, in, r.n_observations);
          tol = kGaussianLocalTol;
        }
        const double err = std::abs(mean_local - expected);
        ++instances;
        if (!(err <= tol)) ++failures;
        if (err > worst) {
          worst = err;
          worst_cell = std::string(to_string(m)) + "/" + std::string(to_string(e));
        }
      }
    }
  }
  const double secs = seconds_since(start);
  report(2, failures == 0 && secs < kLocalSeconds,
         std::to_string(instances) + " instances, " + std::to_string(failures) + " outside tolerance, worst " +
             fmt("%.2e", worst) + (worst_cell.empty() ? "" : " (" + worst_cell + ")") + " in " + fmt("%.1f", secs) +
             " s (limit 30 s)");
}

// ---------------------------------------------------------------- criterion 3

void ksg_gaussian_oracle() {
  const std::size_t n = 10000;
  const int seeds = 20;
  bool ok = true;
  std::string detail;
  for (const double rho : {0.3, 0.6, 0.9}) {
    const double truth = -0.5 * std::log(1.0 - rho * rho);
    for (const int alg : {1, 2}) {
      double sum = 0.0;
      for (int s = 0; s < seeds; ++s) {
        std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(s));
        const RealMatrix xy = testutil::correlated_pair(rng, n, rho);
        ksg::KsgConfig cfg;
        cfg.k = 4;
        cfg.algorithm = alg;
        cfg.seed = static_cast<std::uint64_t>(s);
        sum += ksg::mutual_info(RealMatrix::column(xy.column_values(0)), RealMatrix::column(xy.column_values(1)), cfg)
                   .average;
      }
      const double err = sum / seeds - truth;
      ok = ok && std::abs(err) <= kKsgMiTol;
      detail += "rho " + fmt("%.1f", rho) + " alg " + std::to_string(alg) + " err " + fmt("%+.4f", err) + "; ";
    }
  }
  double kl = 0.0;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(5000 + static_cast<std::uint64_t>(s));
    kl += ksg::kl_entropy(testutil::column(testutil::gaussian_noise(rng, n))).average / seeds;
  }
  const double kl_err = kl - 0.5 * std::log(2.0 * M_PI * M_E);
  ok = ok && std::abs(kl_err) <= kKlTol;
  detail += "KL entropy err " + fmt("%+.4f", kl_err) + " (tolerances 0.03 and 0.02 nats)";
  report(3, ok, detail);
}

// ---------------------------------------------------------------- criterion 4

/// Residual sum of squares of the least-squares fit of y on [1, regressors],
/// by Gaussian elimination with partial pivoting on the normal equations.
double residual_ss(const std::vector<double>& y, const std::vector<std::vector<double>>& regressors) {
  const std::size_t p = regressors.size() + 1, n = y.size();
  auto design = [&](std::size_t i, std::size_t j) { return j == 0 ? 1.0 : regressors[j - 1][i]; };
  std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) a[r][c] += static_cast<long double>(design(i, r)) * design(i, c);
      a[r][p] += static_cast<long double>(design(i, r)) * y[i];
    }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= p; ++j) a[r][j] -= f * a[c][j];
    }
  }
  long double rss = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double fit = 0.0L;
    for (std::size_t j = 0; j < p; ++j) fit += a[j][p] / a[j][j] * design(i, j);
    const long double e = y[i] - fit;
    rss += e * e;
  }
  return static_cast<double>(rss);
}

void granger_equivalence() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    std::mt19937_64 rng(200 + s);
    std::uniform_real_distribution<double> coef(-0.7, 0.7);
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    const std::size_t n = 500 + 100 * s;
    auto x = testutil::gaussian_noise(rng, n), e = testutil::gaussian_noise(rng, n);
    std::vector<double> y(n, 0.0);
    for (std::size_t t = 1; t < n; ++t) {
      x[t] += c * x[t - 1];
      y[t] = a * y[t - 1] + b * x[t - 1] + e[t];
    }
    const double te = gaussian::transfer_entropy(testutil::column(x), testutil::column(y), EmbeddingSpec{}).average;
    std::vector<double> next(y.begin() + 1, y.end()), past(y.begin(), y.end() - 1), src(x.begin(), x.end() - 1);
    const double statistic = std::log(residual_ss(next, {past}) / residual_ss(next, {past, src}));
    worst = std::max(worst, std::abs(te - 0.5 * statistic));
  }
  report(4, worst <= kGrangerTol, "10 AR(1) instances, worst |TE - F/2| " + fmt("%.2e", worst) + " nats (tolerance 1e-6)");
}

// ---------------------------------------------------------------- criterion 5

void null_calibration() {
  bool ok = true;
  std::string detail;
  {
    const std::size_t n = 1000;
    std::mt19937_64 rng(31);
    const auto x = testutil::random_symbols(rng, n, 2), y = testutil::random_symbols(rng, n, 2);
    Calculator calc(Measure::mi, Estimator::discrete);
    calc.initialise();
    calc.add_observations(RealMatrix::column(std::vector<double>(x.begin(), x.end())),
                          RealMatrix::column(std::vector<double>(y.begin(), y.end())));
    const NullDistribution d = calc.compute_significance(5000, NullMethod::permutation, 7);
    const double expected = 1.0 / (2.0 * static_cast<double>(n) * std::log(2.0));
    const double rel = d.mean / expected - 1.0;
    ok = ok && std::abs(rel) <= kNullMeanRelTol;
    detail += "discrete surrogate mean off by " + fmt("%+.1f", 100.0 * rel) + "% (limit 15%); ";
  }
  {
    const std::size_t n = 1000;
    std::mt19937_64 rng(32);
    Calculator calc(Measure::mi, Estimator::gaussian);
    calc.initialise();
    calc.add_observations(testutil::column(testutil::gaussian_noise(rng, n)),
                          testutil::column(testutil::gaussian_noise(rng, n)));
    const NullDistribution d = calc.compute_significance(2000, NullMethod::permutation, 8);
    const boost::math::chi_squared chi1(1.0);
    const double two_n = 2.0 * static_cast<double>(n);
    const double p = testutil::ks_pvalue(d.surrogates, [&](double v) {
      return v <= 0.0 ? 0.0 : boost::math::cdf(chi1, two_n * v);
    });
    ok = ok && p > kKsAlpha;
    detail += "gaussian surrogates KS p " + fmt("%.3f", p) + "; ";
  }
  for (const Estimator e : {Estimator::discrete, Estimator::gaussian}) {
    std::mt19937_64 rng(e == Estimator::discrete ? 33 : 34);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t surrogates = 200;
    std::vector<double> ps;
    for (std::uint64_t run = 0; run < 200; ++run) {
      RealMatrix x, y;
      if (e == Estimator::discrete) {
        const auto a = testutil::random_symbols(rng, 200, 2), b = testutil::random_symbols(rng, 200, 2);
        x = RealMatrix::column(std::vector<double>(a.begin(), a.end()));
        y = RealMatrix::column(std::vector<double>(b.begin(), b.end()));
      } else {
        x = testutil::column(testutil::gaussian_noise(rng, 200));
        y = testutil::column(testutil::gaussian_noise(rng, 200));
      }
      Calculator calc(Measure::mi, e);
      calc.initialise();
      calc.add_observations(x, y);
      const NullDistribution d = calc.compute_significance(surrogates, NullMethod::permutation, run);
      // Ties between the measurement and a surrogate are split at random so
      // that the p-value of a discrete statistic has a continuous null.
      std::size_t greater = 0, equal = 0;
      for (const double s : d.surrogates) {
        if (s > d.actual) ++greater;
        if (s == d.actual) ++equal;
      }
      ps.push_back((static_cast<double>(greater) + unit(rng) * static_cast<double>(equal + 1)) /
                   static_cast<double>(surrogates + 1));
    }
    const double p = testutil::ks_pvalue(ps, [](double v) { return std::clamp(v, 0.0, 1.0); });
    ok = ok && p > kKsAlpha;
    detail += std::string(to_string(e)) + " p-value uniformity KS p " + fmt("%.3f", p) + "; ";
  }
  detail += "alpha 0.01";
  report(5, ok, detail);
}

// ---------------------------------------------------------------- criterion 6

using Key = std::vector<int>;

/// Plug-in local conditional MI log2 p(x,y|z) / (p(x|z) p(y|z)) from exhaustive counts.
std::vector<double> oracle_local_cmi(const std::vector<Key>& x, const std::vector<Key>& y, const std::vector<Key>& z) {
  std::map<Key, double> cxyz, cxz, cyz, cz;
  auto cat = [](Key a, const Key& b) {
    a.push_back(-1);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    cxyz[cat(cat(x[i], y[i]), z[i])] += 1;
    cxz[cat(x[i], z[i])] += 1;
    cyz[cat(y[i], z[i])] += 1;
    cz[z[i]] += 1;
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    out.push_back(std::log2(cxyz[cat(cat(x[i], y[i]), z[i])] * cz[z[i]] / (cxz[cat(x[i], z[i])] * cyz[cat(y[i], z[i])])));
  return out;
}

std::vector<double> oracle_local_entropy(const std::vector<Key>& x) {
  std::map<Key, double> c;
  for (const auto& v : x) c[v] += 1;
  std::vector<double> out;
  for (const auto& v : x) out.push_back(-std::log2(c[v] / static_cast<double>(x.size())));
  return out;
}

/// {s[t-(dim-1)tau], ..., s[t]}.
Key window(const std::vector<int>& s, std::size_t t, int dim, int tau) {
  Key k;
  for (int j = dim - 1; j >= 0; --j) k.push_back(s[t - static_cast<std::size_t>(j * tau)]);
  return k;
}

double max_diff(const MeasureResult& r, const std::vector<double>& oracle) {
  if (r.local.size() != oracle.size()) return INFINITY;
  double worst = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    worst = std::max(worst, std::abs(r.local[i] - oracle[i]));
    sum += oracle[i];
  }
  return std::max(worst, std::abs(r.average - sum / static_cast<double>(oracle.size())));
}

double discrete_brute_force(int& instances) {
  double worst = 0.0;
  std::mt19937_64 rng(600);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 2;
    const std::size_t n = 10 + static_cast<std::size_t>(rng() % 21);
    const Alphabet alpha(m);
    const auto x = testutil::random_symbols(rng, n, m), y = testutil::random_symbols(rng, n, m);
    const auto z = testutil::random_symbols(rng, n, m), w = testutil::random_symbols(rng, n, m);
    EmbeddingSpec spec;
    spec.k = 1 + static_cast<int>(rng() % 2);
    spec.tau_k = 1 + static_cast<int>(rng() % 2);
    spec.l = 1 + static_cast<int>(rng() % 2);
    spec.tau_l = 1 + static_cast<int>(rng() % 2);
    spec.u = 1 + static_cast<int>(rng() % 3);
    const std::size_t off = std::max<std::size_t>(static_cast<std::size_t>((spec.k - 1) * spec.tau_k + 1),
                                                  static_cast<std::size_t>((spec.l - 1) * spec.tau_l + spec.u));
    auto single = [](int v) { return Key{v}; };
    std::vector<Key> kx, ky, kz, none(n), rows;
    for (std::size_t t = 0; t < n; ++t) {
      kx.push_back(single(x[t]));
      ky.push_back(single(y[t]));
      kz.push_back(single(z[t]));
      rows.push_back({x[t], y[t], z[t]});
    }
    worst = std::max(worst, max_diff(discrete::entropy(x, alpha), oracle_local_entropy(kx)));
    worst = std::max(worst, max_diff(discrete::mutual_info(x, y, alpha, alpha), oracle_local_cmi(kx, ky, none)));
    worst = std::max(worst, max_diff(discrete::conditional_mutual_info(x, y, symbol_columns({z}), alpha, alpha, alpha),
                                     oracle_local_cmi(kx, ky, kz)));
    {
      auto h = oracle_local_entropy(rows);
      std::vector<double> local(n);
      const auto hx = oracle_local_entropy(kx), hy = oracle_local_entropy(ky), hz = oracle_local_entropy(kz);
      for (std::size_t t = 0; t < n; ++t) local[t] = hx[t] + hy[t] + hz[t] - h[t];
      worst = std::max(worst, max_diff(discrete::multi_info(symbol_columns({x, y, z}), alpha), local));
    }
    // Storage family on the destination x: past ends at t-1, next is x[t].
    const int k = spec.k, tau = spec.tau_k;
    const std::size_t soff = static_cast<std::size_t>((k - 1) * tau + 1);
    std::vector<Key> past, next, empty;
    for (std::size_t t = soff; t < n; ++t) {
      past.push_back(window(x, t - 1, k, tau));
      next.push_back({x[t]});
      empty.push_back({});
    }
    {
      const auto cmi_pn = oracle_local_cmi(past, next, empty), hn = oracle_local_entropy(next);
      std::vector<double> rate(hn.size());
      for (std::size_t i = 0; i < rate.size(); ++i) rate[i] = hn[i] - cmi_pn[i];
      worst = std::max(worst, max_diff(discrete::entropy_rate(x, alpha, k, tau), rate));
      worst = std::max(worst, max_diff(discrete::active_info_storage(x, alpha, k, tau), cmi_pn));
    }
    const std::size_t span = static_cast<std::size_t>((k - 1) * tau);
    if (n >= soff + span + 1) {
      std::vector<Key> before, after, blank;
      for (std::size_t t = soff; t + span < n; ++t) {
        before.push_back(window(x, t - 1, k, tau));
        after.push_back(window(x, t + span, k, tau));
        blank.push_back({});
      }
      worst = std::max(worst, max_diff(discrete::predictive_info(x, alpha, k, tau), oracle_local_cmi(before, after, blank)));
    }
    // Transfer family from y (and w) to x.
    std::vector<Key> src, src2, joint_src, given, given_c, dest, nothing;
    for (std::size_t t = off; t < n; ++t) {
      const std::size_t ts = t - static_cast<std::size_t>(spec.u);
      src.push_back(window(y, ts, spec.l, spec.tau_l));
      src2.push_back(window(w, ts, spec.l, spec.tau_l));
      Key both = src.back();
      both.insert(both.end(), src2.back().begin(), src2.back().end());
      joint_src.push_back(both);
      given.push_back(window(x, t - 1, spec.k, spec.tau_k));
      Key gc = given.back();
      gc.push_back(z[t - 1]);
      given_c.push_back(gc);
      dest.push_back({x[t]});
      nothing.push_back({});
    }
    const auto te = oracle_local_cmi(src, dest, given);
    worst = std::max(worst, max_diff(discrete::transfer_entropy(y, x, alpha, spec), te));
    worst = std::max(worst, max_diff(discrete::conditional_transfer_entropy(y, x, symbol_columns({z}), alpha, spec),
                                     oracle_local_cmi(src, dest, given_c)));
    worst = std::max(worst, max_diff(discrete::collective_transfer_entropy(symbol_columns({y, w}), x, alpha, spec),
                                     oracle_local_cmi(joint_src, dest, given)));
    {
      const auto ais = oracle_local_cmi(given, dest, nothing), te2 = oracle_local_cmi(src2, dest, given);
      std::vector<double> sep(ais.size());
      for (std::size_t i = 0; i < sep.size(); ++i) sep[i] = ais[i] + te[i] + te2[i];
      worst = std::max(worst, max_diff(discrete::separable_info(x, symbol_columns({y, w}), alpha, spec), sep));
    }
    instances += 11;
  }
  return worst;
}

double max_norm(const RealMatrix& a, std::size_t i, std::size_t j, std::size_t c0, std::size_t c1) {
  double d = 0.0;
  for (std::size_t c = c0; c < c1; ++c) d = std::max(d, std::abs(a(i, c) - a(j, c)));
  return d;
}

/// KSG terms by exhaustive scan over every pair. Blocks are column ranges of
/// `joint`: x, y and an optional z.
std::vector<double> oracle_ksg(const RealMatrix& joint, std::size_t dx, std::size_t dy, int k, int alg) {
  const std::size_t n = joint.rows(), dz = joint.cols() - dx - dy;
  const std::size_t x0 = 0, x1 = dx, y0 = dx, y1 = dx + dy, z0 = y1, z1 = joint.cols();
  auto psi = [](double v) { return boost::math::digamma(v); };
  auto marginal = [&](std::size_t i, const std::vector<std::array<std::size_t, 2>>& blocks,
                      const std::vector<double>& radii, bool strict) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      bool inside = true;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const double d = max_norm(joint, i, j, blocks[b][0], blocks[b][1]);
        inside = inside && (strict ? d < radii[b] : d <= radii[b]);
      }
      if (inside) ++count;
    }
    return static_cast<double>(count);
  };
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.emplace_back(max_norm(joint, i, j, 0, joint.cols()), j);
    std::sort(others.begin(), others.end());
    const double kk = k;
    if (alg == 1) {
      const double eps = others[static_cast<std::size_t>(k) - 1].first;
      if (dz == 0) {
        out[i] = psi(kk) - psi(marginal(i, {{x0, x1}}, {eps}, true) + 1) - psi(marginal(i, {{y0, y1}}, {eps}, true) + 1) +
                 psi(static_cast<double>(n));
      } else {
        out[i] = psi(kk) + psi(marginal(i, {{z0, z1}}, {eps}, true) + 1) -
                 psi(marginal(i, {{x0, x1}, {z0, z1}}, {eps, eps}, true) + 1) -
                 psi(marginal(i, {{y0, y1}, {z0, z1}}, {eps, eps}, true) + 1);
      }
    } else {
      double ex = 0.0, ey = 0.0, ez = 0.0;
      for (int m = 0; m < k; ++m) {
        const std::size_t j = others[static_cast<std::size_t>(m)].second;
        ex = std::max(ex, max_norm(joint, i, j, x0, x1));
        ey = std::max(ey, max_norm(joint, i, j, y0, y1));
        if (dz > 0) ez = std::max(ez, max_norm(joint, i, j, z0, z1));
      }
      if (dz == 0) {
        out[i] = psi(kk) - 1.0 / kk - psi(marginal(i, {{x0, x1}}, {ex}, false)) -
                 psi(marginal(i, {{y0, y1}}, {ey}, false)) + psi(static_cast<double>(n));
      } else {
        const double nxz = marginal(i, {{x0, x1}, {z0, z1}}, {ex, ez}, false);
        const double nyz = marginal(i, {{y0, y1}, {z0, z1}}, {ey, ez}, false);
        out[i] = psi(kk) - 2.0 / kk + psi(marginal(i, {{z0, z1}}, {ez}, false)) - psi(nxz) + 1.0 / nxz - psi(nyz) +
                 1.0 / nyz;
      }
    }
  }
  return out;
}

double ksg_brute_force(int& instances) {
  double worst = 0.0;
  std::mt19937_64 rng(700);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + static_cast<std::size_t>(rng() % 31);
    const std::size_t dx = 1 + trial % 2, dy = 1 + (trial / 2) % 2, dz = (trial / 4) % 3;
    std::vector<std::vector<double>> cols;
    for (std::size_t c = 0; c < dx + dy + dz; ++c) cols.push_back(testutil::gaussian_noise(rng, n));
    const RealMatrix joint = columns(cols);
    std::vector<std::vector<double>> xs(cols.begin(), cols.begin() + static_cast<long>(dx));
    std::vector<std::vector<double>> ys(cols.begin() + static_cast<long>(dx), cols.begin() + static_cast<long>(dx + dy));
    std::vector<std::vector<double>> zs(cols.begin() + static_cast<long>(dx + dy), cols.end());
    const RealMatrix z = dz == 0 ? RealMatrix(n, 0) : columns(zs);
    for (const int alg : {1, 2}) {
      ksg::KsgConfig cfg;
      cfg.k = 1 + trial % 5;
      cfg.algorithm = alg;
      cfg.normalise = false;
      cfg.noise_scale = 0.0;
      cfg.method = ksg::SearchMethod::exhaustive;
      const MeasureResult r = ksg::conditional_mutual_info(columns(xs), columns(ys), z, cfg);
      worst = std::max(worst, max_diff(r, oracle_ksg(joint, dx, dy, cfg.k, alg)));
      ++instances;
    }
    ksg::KsgConfig kl;
    kl.k = 1 + trial % 4;
    kl.noise_scale = 0.0;
    std::vector<double> local(n);
    const double d = static_cast<double>(joint.cols());
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> dist;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) dist.push_back(max_norm(joint, i, j, 0, joint.cols()));
      std::sort(dist.begin(), dist.end());
      local[i] = -boost::math::digamma(static_cast<double>(kl.k)) + boost::math::digamma(static_cast<double>(n)) +
                 d * std::log(2.0 * dist[static_cast<std::size_t>(kl.k) - 1]);
    }
    worst = std::max(worst, max_diff(ksg::kl_entropy(joint, kl), local));
    ++instances;
  }
  return worst;
}

/// Tree-backed and exhaustive neighbour searches must return identical results.
bool search_paths_agree(std::string& detail) {
  std::mt19937_64 rng(800);
  const std::size_t n = 4000;
  const RealMatrix pts = columns({testutil::gaussian_noise(rng, n), testutil::gaussian_noise(rng, n),
                                  testutil::gaussian_noise(rng, n)});
  const ksg::NeighbourSearch tree(pts, ksg::SearchMethod::tree), scan(pts, ksg::SearchMethod::exhaustive);
  bool same = tree.uses_tree() && !scan.uses_tree();
  for (std::size_t i = 0; i < n && same; i += 7) {
    const auto a = tree.nearest(i, 5), b = scan.nearest(i, 5);
    for (std::size_t j = 0; j < a.size(); ++j) same = same && a[j].index == b[j].index && a[j].distance == b[j].distance;
    const double r = a.back().distance;
    same = same && tree.range_count(i, r, ksg::Boundary::strict) == scan.range_count(i, r, ksg::Boundary::strict);
    same = same && tree.range_count(i, r, ksg::Boundary::inclusive) == scan.range_count(i, r, ksg::Boundary::inclusive);
  }
  const RealMatrix x = RealMatrix::column(pts.column_values(0)), y = RealMatrix::column(pts.column_values(1));
  for (const int alg : {1, 2}) {
    ksg::KsgConfig cfg;
    cfg.algorithm = alg;
    cfg.method = ksg::SearchMethod::tree;
    const MeasureResult a = ksg::mutual_info(x, y, cfg);
    cfg.method = ksg::SearchMethod::exhaustive;
    const MeasureResult b = ksg::mutual_info(x, y, cfg);
    same = same && a.local == b.local && a.average == b.average;
  }
  same = same && kernel::neighbour_counts(pts, 0.3, kernel::CountMethod::naive) ==
                     kernel::neighbour_counts(pts, 0.3, kernel::CountMethod::box);
  detail += same ? "tree and exhaustive paths identical" : "tree and exhaustive paths DIFFER";
  return same;
}

void brute_force() {
  int discrete_instances = 0, ksg_instances = 0;
  const double dw = discrete_brute_force(discrete_instances);
  const double kw = ksg_brute_force(ksg_instances);
  std::string detail = std::to_string(discrete_instances) + " discrete instances worst " + fmt("%.1e", dw) + "; " +
                       std::to_string(ksg_instances) + " KSG instances worst " + fmt("%.1e", kw) +
                       " (tolerance 1e-12); ";
  const bool agree = search_paths_agree(detail);
  report(6, dw <= kBruteTol && kw <= kBruteTol && agree, detail);
}

// ---------------------------------------------------------------- criterion 7

void lag_recovery() {
  const io::LagSweep s = io::lag_sweep(5000, 5, 3);
  auto argmax = [&](const std::vector<double>& v) {
    return s.lags[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())];
  };
  const int a = argmax(s.discrete), b = argmax(s.ksg), c = argmax(s.kernel);
  report(7, a == 3 && b == 3 && c == 3,
         "argmax u: discrete " + std::to_string(a) + ", KSG " + std::to_string(b) + ", kernel " + std::to_string(c) +
             " (want 3)");
}

// ---------------------------------------------------------------- criterion 8

void ais_embedding_selection() {
  const std::size_t n = 2000, burn_in = 200;
  const int seeds = 10;
  std::vector<double> avg(9, 0.0);
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(100 + static_cast<std::uint64_t>(s));
    std::normal_distribution<double> g;
    // Order-2 process: the next value depends on the value two steps back only.
    std::vector<double> x(n + burn_in, 0.0);
    for (std::size_t t = 2; t < x.size(); ++t) x[t] = 0.9 * x[t - 2] + g(rng);
    const RealMatrix series = RealMatrix::column(std::vector<double>(x.begin() + burn_in, x.end()));
    for (int k = 1; k <= 8; ++k) avg[static_cast<std::size_t>(k)] += ksg::active_info_storage(series, k).average / seeds;
  }
  const int best = static_cast<int>(std::max_element(avg.begin() + 1, avg.end()) - avg.begin());
  std::string detail = "mean AIS by k:";
  for (int k = 1; k <= 8; ++k) detail += " " + fmt("%.3f", avg[static_cast<std::size_t>(k)]);
  report(8, best == 2, detail + " nats; argmax k = " + std::to_string(best) + " (want 2)");
}

// ---------------------------------------------------------------- criterion 9

void ca_profile() {
  const io::CaGliderStats st = io::ca_glider_stats(35, 600, 16, 10, 1);
  const double threshold = st.grid_mean + st.grid_std;
  const bool gliders = st.glider_cells > 0 && st.glider_mean > threshold;
  const bool control = std::abs(st.control_right) < 0.01 && std::abs(st.control_left) < 0.01;
  report(9, gliders && control,
         "rule 54 glider TE " + fmt("%.3f", st.glider_mean) + " bits over " + std::to_string(st.glider_cells) +
             " cells vs grid mean + std " + fmt("%.3f", threshold) + (gliders ? " (met)" : " (not met)") +
             "; rule 204 TE " + fmt("%.2e", st.control_right) + " and " + fmt("%.2e", st.control_left) +
             (control ? " (met)" : " (not met)"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{binary_copy,        local_average_consistency,
                                                    ksg_gaussian_oracle, granger_equivalence,
                                                    null_calibration,   brute_force,
                                                    lag_recovery,       ais_embedding_selection,
                                                    ca_profile};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("error: ") + e.what());
    }
  }
  std::printf("%d of %d criteria pass\n", passed, total);
  return 0;
}
