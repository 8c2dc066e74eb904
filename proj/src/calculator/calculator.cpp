#include "infodyn/calculator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "infodyn/discrete/measures.hpp"
#include "infodyn/discrete/plugin.hpp"
#include "infodyn/discretise.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/gaussian/measures.hpp"
#include "infodyn/kernel/measures.hpp"
#include "infodyn/ksg/measures.hpp"
#include "infodyn/surrogate/resampling.hpp"
#include "infodyn/symbolic/measures.hpp"

namespace infodyn {

namespace {

constexpr std::pair<Measure, std::string_view> kMeasureNames[] = {
    {Measure::entropy, "entropy"}, {Measure::mi, "mi"},   {Measure::cmi, "cmi"},
    {Measure::multi, "multi"},     {Measure::rate, "rate"}, {Measure::ais, "ais"},
    {Measure::pi, "pi"},           {Measure::te, "te"},   {Measure::cte, "cte"},
    {Measure::collective_te, "collective-te"},            {Measure::separable, "separable"},
};

constexpr std::pair<Estimator, std::string_view> kEstimatorNames[] = {
    {Estimator::discrete, "discrete"}, {Estimator::gaussian, "gaussian"}, {Estimator::kernel, "kernel"},
    {Estimator::ksg, "ksg"},           {Estimator::symbolic, "symbolic"},
};

bool symbol_family(Estimator e) { return e == Estimator::discrete || e == Estimator::symbolic; }

bool uses_source(Measure m) {
  switch (m) {
    case Measure::mi:
    case Measure::cmi:
    case Measure::te:
    case Measure::cte:
    case Measure::collective_te:
    case Measure::separable:
      return true;
    default:
      return false;
  }
}

/// Entropy-type measures, whose KSG form is Kozachenko-Leonenko and hence not scale invariant.
bool entropy_type(Measure m) { return m == Measure::entropy || m == Measure::rate; }

SymbolMatrix symbols(const RealMatrix& m) { return matrix_cast<int>(m); }

/// sum_i coeff_i * r_i, applied to both the averages and the locals.
MeasureResult combine(const std::vector<std::pair<double, MeasureResult>>& terms) {
  MeasureResult out = terms.front().second;
  out.average = 0.0;
  std::fill(out.local.begin(), out.local.end(), 0.0);
  for (const auto& [c, r] : terms) {
    out.average += c * r.average;
    for (std::size_t i = 0; i < out.local.size(); ++i) out.local[i] += c * r.local[i];
  }
  return out;
}

RealMatrix columns(const RealMatrix& m, std::size_t begin, std::size_t end) {
  std::vector<std::size_t> cols(end - begin);
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = begin + j;
  return m.select_columns(cols);
}

/// Entropy, conditional MI and multi-information for one estimator family.
class Family {
 public:
  Family(Estimator e, int K, int algorithm, double r, bool bias_correction)
      : e_(e), K_(K), algorithm_(algorithm), r_(r), bias_(bias_correction) {}

  MeasureResult entropy(const RealMatrix& a) const {
    switch (e_) {
      case Estimator::discrete:
      case Estimator::symbolic:
        return result_from_locals(discrete::local_entropy(discrete::joint_states(symbols(a))), Units::bits);
      case Estimator::gaussian:
        return gaussian::entropy(a);
      case Estimator::kernel: {
        kernel::KernelConfig cfg;
        cfg.r = r_;
        cfg.normalise = false;
        return kernel::entropy(a, cfg);
      }
      case Estimator::ksg:
        return ksg::kl_entropy_tuples(a, K_, ksg::SearchMethod::automatic);
    }
    throw UsageError("unknown estimator");
  }

  /// I(a; b | c); `c` may have no columns.
  MeasureResult cmi(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c) const {
    switch (e_) {
      case Estimator::discrete:
      case Estimator::symbolic: {
        const auto z = c.cols() == 0 ? discrete::constant_states(a.rows()) : discrete::joint_states(symbols(c));
        return result_from_locals(discrete::local_conditional_mutual_info(discrete::joint_states(symbols(a)),
                                                                          discrete::joint_states(symbols(b)), z),
                                  Units::bits);
      }
      case Estimator::gaussian:
        return gaussian::conditional_mutual_info(a, b, c);
      case Estimator::kernel:
        if (c.cols() == 0) return kernel::mutual_info_tuples(a, b, r_, kernel::CountMethod::automatic);
        return kernel::transfer_entropy_tuples(a, b, c, r_, kernel::CountMethod::automatic, bias_);
      case Estimator::ksg:
        return ksg::conditional_mi_tuples(a, b, c, K_, algorithm_, ksg::SearchMethod::automatic);
    }
    throw UsageError("unknown estimator");
  }

  /// Multi-information between the columns of `a`.
  MeasureResult multi(const RealMatrix& a) const {
    if (a.cols() < 2) throw UsageError("multi-information needs at least two variables (columns)");
    if (e_ == Estimator::ksg) {
      std::vector<RealMatrix> vars;
      for (std::size_t c = 0; c < a.cols(); ++c) vars.push_back(columns(a, c, c + 1));
      return ksg::multi_info_tuples(vars, K_, algorithm_, ksg::SearchMethod::automatic);
    }
    if (e_ == Estimator::kernel) {
      kernel::KernelConfig cfg;
      cfg.r = r_;
      cfg.normalise = false;
      return kernel::multi_info(a, cfg);
    }
    std::vector<std::pair<double, MeasureResult>> terms;
    for (std::size_t c = 0; c < a.cols(); ++c) terms.emplace_back(1.0, entropy(columns(a, c, c + 1)));
    terms.emplace_back(-1.0, entropy(a));
    return combine(terms);
  }

 private:
  Estimator e_;
  int K_, algorithm_;
  double r_;
  bool bias_;
};

int to_int(long long v, std::string_view key) {
  if (v < -2147483647LL || v > 2147483647LL) throw UsageError("property " + std::string(key) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

Measure parse_measure(std::string_view name) {
  for (const auto& [m, n] : kMeasureNames)
    if (n == name) return m;
  throw UsageError("unknown measure '" + std::string(name) + "'");
}

std::string_view to_string(Measure measure) {
  for (const auto& [m, n] : kMeasureNames)
    if (m == measure) return n;
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  for (const auto& [e, n] : kEstimatorNames)
    if (n == name) return e;
  throw UsageError("unknown estimator '" + std::string(name) + "'");
}

std::string_view to_string(Estimator estimator) {
  for (const auto& [e, n] : kEstimatorNames)
    if (e == estimator) return n;
  return "unknown";
}

Calculator::Calculator(Measure measure, Estimator estimator) : measure_(measure), estimator_(estimator) {
  if (estimator == Estimator::symbolic && measure != Measure::entropy && measure != Measure::ais &&
      measure != Measure::te)
    throw UsageError("the symbolic estimator supports entropy, ais and te only, not " + std::string(to_string(measure)));
  using T = PropertyType;
  properties_.declare("k", T::integer, "1");
  properties_.declare("tau_k", T::integer, "1");
  properties_.declare("l", T::integer, "1");
  properties_.declare("tau_l", T::integer, "1");
  properties_.declare("u", T::integer, "1");
  properties_.declare("K", T::integer, "4");
  properties_.declare("algorithm", T::integer, "1");
  properties_.declare("r", T::real, "0.5");
  properties_.declare("normalise", T::boolean, "true");
  properties_.declare("d", T::integer, "3");
  properties_.declare("noise_scale", T::real, "1e-8");
  properties_.declare("noise_seed", T::integer, "0");
  properties_.declare("bins", T::integer, "0");
  properties_.declare("bin_mode", T::text, "even");
  properties_.declare("alphabet", T::integer, "0");
  properties_.declare("bias_correction", T::boolean, "false");
}

void Calculator::initialise() {
  Settings s;
  s.spec.k = to_int(properties_.get_int("k"), "k");
  s.spec.tau_k = to_int(properties_.get_int("tau_k"), "tau_k");
  s.spec.l = to_int(properties_.get_int("l"), "l");
  s.spec.tau_l = to_int(properties_.get_int("tau_l"), "tau_l");
  s.spec.u = to_int(properties_.get_int("u"), "u");
  s.spec.validate();
  s.K = to_int(properties_.get_int("K"), "K");
  if (s.K < 1) throw UsageError("property K must be >= 1");
  s.algorithm = to_int(properties_.get_int("algorithm"), "algorithm");
  if (s.algorithm != 1 && s.algorithm != 2) throw UsageError("property algorithm must be 1 or 2");
  s.r = properties_.get_real("r");
  if (!(s.r > 0.0)) throw UsageError("property r must be > 0");
  s.normalise = properties_.get_bool("normalise");
  s.d = to_int(properties_.get_int("d"), "d");
  if (s.d < 2 || s.d > symbolic::kMaxPatternLength)
    throw UsageError("property d must be in [2, " + std::to_string(symbolic::kMaxPatternLength) + "]");
  s.noise_scale = properties_.get_real("noise_scale");
  if (s.noise_scale < 0.0) throw UsageError("property noise_scale must be >= 0");
  s.noise_seed = static_cast<std::uint64_t>(properties_.get_int("noise_seed"));
  s.bins = to_int(properties_.get_int("bins"), "bins");
  if (s.bins < 0 || s.bins == 1) throw UsageError("property bins must be 0 (no binning) or >= 2");
  s.bin_mode = properties_.get_text("bin_mode");
  parse_bin_mode(s.bin_mode);
  s.alphabet = properties_.get_int("alphabet");
  if (s.alphabet != 0) static_cast<void>(Alphabet(s.alphabet));
  s.bias_correction = properties_.get_bool("bias_correction");
  if (estimator_ == Estimator::symbolic && (s.spec.k != 1 || s.spec.l != 1))
    throw UsageError("the symbolic estimator needs k = l = 1; the pattern length d sets the history");
  settings_ = s;
  store_ = {};
  source_ = target_ = past_ = cond_ = RealMatrix{};
  alphabet_ = 0;
  result_.reset();
  initialised_ = true;
}

RealMatrix Calculator::to_symbols(const RealMatrix& data) const {
  RealMatrix out = data;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    const auto values = data.column_values(c);
    if (settings_.bins > 0) {
      const auto bins = discretise(values, settings_.bins, parse_bin_mode(settings_.bin_mode));
      for (std::size_t r = 0; r < bins.size(); ++r) out(r, c) = bins[r];
      continue;
    }
    for (std::size_t r = 0; r < values.size(); ++r) {
      const double v = values[r];
      if (v < 0.0 || v != std::floor(v) || v > 2147483647.0)
        throw DataError("discrete estimator needs non-negative integer symbols (row " + std::to_string(r) +
                        ", column " + std::to_string(c) + "); set bins to discretise real data");
    }
  }
  return out;
}

TupleBlocks<double> Calculator::symbolic_tuples(const RealMatrix& source, const RealMatrix& dest) const {
  if (dest.cols() != 1 || (measure_ == Measure::te && source.cols() != 1))
    throw UsageError("the symbolic estimator needs univariate source and destination");
  const int d = settings_.d;
  const auto& spec = settings_.spec;
  const std::size_t n = dest.rows();
  const std::size_t span_k = static_cast<std::size_t>(d - 1) * static_cast<std::size_t>(spec.tau_k);
  const std::size_t span_l = static_cast<std::size_t>(d - 1) * static_cast<std::size_t>(spec.tau_l);
  const auto dvals = dest.column_values(0);
  const auto dp = symbolic::pattern_series(dvals, d, spec.tau_k);
  // pattern of the window ending at raw index t
  auto dest_at = [&](std::size_t t) { return static_cast<double>(dp[t - span_k]); };
  std::size_t offset = span_k;
  if (measure_ == Measure::ais) offset = span_k + 1;
  std::vector<int> sp;
  if (measure_ == Measure::te) {
    if (source.rows() != n) throw DataError("source and destination series must have equal lengths");
    sp = symbolic::pattern_series(source.column_values(0), d, spec.tau_l);
    offset = std::max(span_k + 1, span_l + static_cast<std::size_t>(spec.u));
  }
  detail::require_samples(n, offset + 1);
  const std::size_t rows = n - offset;
  TupleBlocks<double> b;
  b.offset = offset;
  b.target = RealMatrix(rows, 1);
  b.source = RealMatrix(rows, measure_ == Measure::entropy ? 0 : 1);
  b.past = RealMatrix(rows, measure_ == Measure::te ? 1 : 0);
  b.conditional = RealMatrix(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = offset + i;
    b.target(i, 0) = dest_at(t);
    if (measure_ == Measure::ais) b.source(i, 0) = dest_at(t - 1);
    if (measure_ == Measure::te) {
      b.past(i, 0) = dest_at(t - 1);
      b.source(i, 0) = sp[t - static_cast<std::size_t>(spec.u) - span_l];
    }
  }
  return b;
}

TupleBlocks<double> Calculator::make_tuples(const RealMatrix& source, const RealMatrix& dest,
                                            const RealMatrix& cond) const {
  const auto& spec = settings_.spec;
  if (estimator_ == Estimator::symbolic) return symbolic_tuples(source, dest);
  const RealMatrix src = estimator_ == Estimator::discrete ? to_symbols(source) : source;
  const RealMatrix dst = estimator_ == Estimator::discrete ? to_symbols(dest) : dest;
  const RealMatrix cnd = estimator_ == Estimator::discrete ? to_symbols(cond) : cond;
  const std::size_t n = dst.rows();
  switch (measure_) {
    case Measure::entropy:
    case Measure::multi: {
      TupleBlocks<double> b;
      b.target = dst;
      b.source = b.past = b.conditional = RealMatrix(n, 0);
      return b;
    }
    case Measure::mi:
    case Measure::cmi: {
      if (src.rows() != n || (cnd.cols() > 0 && cnd.rows() != n))
        throw DataError("source, destination and conditional series must have equal lengths");
      TupleBlocks<double> b;
      b.source = src;
      b.target = dst;
      b.past = RealMatrix(n, 0);
      b.conditional = cnd.cols() > 0 ? cnd : RealMatrix(n, 0);
      return b;
    }
    case Measure::rate:
    case Measure::ais:
      return storage_tuples(dst, spec.k, spec.tau_k);
    case Measure::pi:
      return predictive_tuples(dst, spec.k, spec.tau_k);
    case Measure::te:
    case Measure::cte:
    case Measure::collective_te:
    case Measure::separable:
      return transfer_tuples(src, dst, cnd.cols() > 0 ? cnd : RealMatrix(n, 0), spec);
  }
  throw UsageError("unknown measure");
}

void Calculator::add_observations(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond) {
  if (!initialised_) throw UsageError("call initialise() before adding observations");
  if (store_.finalized()) throw UsageError("observations already finalized; call initialise() first");
  if (dest.cols() == 0 || dest.rows() == 0) throw DataError("destination has no data");
  if (uses_source(measure_) && source.cols() == 0) throw UsageError("measure " + std::string(to_string(measure_)) +
                                                                    " needs a source variable");
  if (!uses_source(measure_) && source.cols() > 0)
    throw UsageError("measure " + std::string(to_string(measure_)) + " takes no source variable");
  if (measure_ == Measure::cmi || measure_ == Measure::cte) {
    if (cond.cols() == 0) throw UsageError("measure " + std::string(to_string(measure_)) + " needs a conditional");
  } else if (cond.cols() > 0) {
    throw UsageError("measure " + std::string(to_string(measure_)) + " takes no conditional variable");
  }
  require_finite(source.data());
  require_finite(dest.data());
  require_finite(cond.data());
  store_.add(make_tuples(source, dest, cond));
}

void Calculator::finalise() {
  if (!initialised_) throw UsageError("call initialise() before computing");
  if (store_.finalized()) return;
  store_.finalize();
  source_ = store_.source();
  target_ = store_.target();
  past_ = store_.past();
  cond_ = store_.conditional();
  if (symbol_family(estimator_)) {
    if (estimator_ == Estimator::symbolic) {
      alphabet_ = symbolic::pattern_count(settings_.d);
    } else if (settings_.bins > 0) {
      alphabet_ = settings_.bins;
    } else {
      double top = 0.0;
      for (const RealMatrix* m : {&source_, &target_, &past_, &cond_})
        for (double v : m->data()) top = std::max(top, v);
      alphabet_ = settings_.alphabet > 0 ? settings_.alphabet : std::max<std::int64_t>(2, std::int64_t(top) + 1);
      if (top >= static_cast<double>(alphabet_))
        throw DataError("symbol " + std::to_string(static_cast<long long>(top)) + " out of alphabet of size " +
                        std::to_string(alphabet_));
    }
    return;
  }
  const bool scale = settings_.normalise && !(estimator_ == Estimator::ksg && entropy_type(measure_));
  if (scale && estimator_ != Estimator::gaussian) {
    for (RealMatrix* m : {&source_, &target_, &past_, &cond_})
      if (m->cols() > 0) *m = normalise_columns(*m);
  }
  if (estimator_ == Estimator::ksg)
    ksg::add_jitter({&source_, &target_, &past_, &cond_}, settings_.noise_scale, settings_.noise_seed);
}

MeasureResult Calculator::evaluate(const RealMatrix& source) const {
  const Family f(estimator_, settings_.K, settings_.algorithm, settings_.r, settings_.bias_correction);
  const RealMatrix none(target_.rows(), 0);
  switch (measure_) {
    case Measure::entropy:
      return f.entropy(target_);
    case Measure::multi:
      return f.multi(target_);
    case Measure::rate:
      return combine({{1.0, f.entropy(hstack(source, target_))}, {-1.0, f.entropy(source)}});
    case Measure::mi:
    case Measure::ais:
    case Measure::pi:
      return f.cmi(source, target_, none);
    case Measure::cmi:
      return f.cmi(source, target_, cond_);
    case Measure::te:
    case Measure::cte:
    case Measure::collective_te:
      return f.cmi(source, target_, hstack(past_, cond_));
    case Measure::separable: {
      std::vector<std::pair<double, MeasureResult>> terms;
      terms.emplace_back(1.0, f.cmi(past_, target_, none));
      const auto l = static_cast<std::size_t>(settings_.spec.l);
      for (std::size_t s = 0; s * l < source.cols(); ++s)
        terms.emplace_back(1.0, f.cmi(columns(source, s * l, (s + 1) * l), target_, past_));
      return combine(terms);
    }
  }
  throw UsageError("unknown measure");
}

MeasureResult Calculator::compute() {
  finalise();
  if (!result_) {
    MeasureResult r = evaluate(source_);
    r.offset = store_.offsets().front();
    r.n_observations = store_.size();
    result_ = std::move(r);
  }
  return *result_;
}

bool Calculator::resamplable() const {
  switch (measure_) {
    case Measure::mi:
    case Measure::cmi:
    case Measure::ais:
    case Measure::pi:
    case Measure::te:
    case Measure::cte:
    case Measure::collective_te:
      return true;
    default:
      return false;
  }
}

NullDistribution Calculator::compute_significance(std::size_t n_surrogates, NullMethod method, std::uint64_t seed) {
  if (!resamplable())
    throw UsageError("significance testing is not defined for measure " + std::string(to_string(measure_)));
  if (n_surrogates == 0) throw UsageError("at least one surrogate is required");
  if (method == NullMethod::analytic) throw UsageError("use analytic_significance() for the analytic null");
  const double actual = compute().average;
  const std::size_t n = source_.rows();
  std::vector<std::size_t> shifts;
  if (method == NullMethod::rotation) shifts = surrogate::rotation_shifts(n, n_surrogates, seed);
  std::vector<double> values(n_surrogates);
  for (std::size_t i = 0; i < n_surrogates; ++i) {
    const auto order =
        method == NullMethod::rotation ? surrogate::rotation(n, shifts[i]) : surrogate::permutation(n, seed, i);
    values[i] = evaluate(source_.select_rows(order)).average;
  }
  return empirical_null(std::move(values), actual, method, seed, result_->units);
}

NullDistribution Calculator::analytic_significance() {
  if (estimator_ != Estimator::discrete && estimator_ != Estimator::gaussian)
    throw UsageError("analytic null unavailable for the " + std::string(to_string(estimator_)) + " estimator");
  if (!resamplable())
    throw UsageError("analytic null unavailable for measure " + std::string(to_string(measure_)));
  const double actual = compute().average;
  const std::size_t n = store_.size();
  const RealMatrix given = measure_ == Measure::cmi ? cond_ : hstack(past_, cond_);
  if (estimator_ == Estimator::gaussian) return gaussian::analytic_null(target_.cols(), source_.cols(), n, actual);
  const Alphabet a(alphabet_);
  return discrete::analytic_null(discrete::NullMeasure::cond_mi, a.joint_size(target_.cols()),
                                 a.joint_size(source_.cols()), a.joint_size(given.cols()), settings_.spec, n, actual);
}

}  // namespace infodyn
