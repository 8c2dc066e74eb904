#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "infodyn/embedding.hpp"
#include "infodyn/matrix.hpp"
#include "infodyn/null_distribution.hpp"
#include "infodyn/properties.hpp"
#include "infodyn/types.hpp"

namespace infodyn {

enum class Measure { entropy, mi, cmi, multi, rate, ais, pi, te, cte, collective_te, separable };
enum class Estimator { discrete, gaussian, kernel, ksg, symbolic };

/// Command-line names: entropy, mi, cmi, multi, rate, ais, pi, te, cte, collective-te, separable.
Measure parse_measure(std::string_view name);
std::string_view to_string(Measure measure);
/// discrete, gaussian, kernel, ksg, symbolic.
Estimator parse_estimator(std::string_view name);
std::string_view to_string(Estimator estimator);

/// One measure computed with one estimator family over observations pooled
/// from any number of trials.
///
/// Lifecycle: set properties, initialise(), add_observations() once per
/// trial, then compute(). The first compute() or significance call
/// finalises the observations; adding more afterwards requires another
/// initialise(). Properties are read at initialise().
///
/// Roles of the add_observations() arguments:
///   entropy, multi, rate, ais, pi:   dest only (multi: one variable per column)
///   mi, cmi:                         I(source; dest | cond), all at the same time step
///   te, cte, collective-te:          source -> dest, conditioned on cond for cte
///   separable:                       each source column is a separate source
/// The discrete and symbolic families want symbol input; real input is
/// binned when the `bins` property is positive and must otherwise hold
/// integers in [0, alphabet).
class Calculator {
 public:
  Calculator(Measure measure, Estimator estimator);

  PropertyMap& properties() noexcept { return properties_; }
  const PropertyMap& properties() const noexcept { return properties_; }
  void set_property(std::string_view key, std::string_view value) { properties_.set(key, value); }

  void initialise();
  void add_observations(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond = {});
  void finalise();

  /// The measure over all pooled tuples. Local values follow tuple order;
  /// `offset` is the first usable index of the first trial.
  MeasureResult compute();

  /// Empirical null from `n_surrogates` resamplings of the source-state
  /// tuples; destination and conditioning tuples stay fixed. Leaves the
  /// calculator state untouched.
  NullDistribution compute_significance(std::size_t n_surrogates, NullMethod method, std::uint64_t seed);

  /// Asymptotic chi-square null. Discrete and Gaussian families only.
  NullDistribution analytic_significance();

  Measure measure() const noexcept { return measure_; }
  Estimator estimator() const noexcept { return estimator_; }
  std::size_t observations() const noexcept { return store_.size(); }
  /// Alphabet size in use (discrete and symbolic only; 0 before finalise).
  std::int64_t alphabet() const noexcept { return alphabet_; }

 private:
  struct Settings {
    EmbeddingSpec spec;
    int K = 4;
    int algorithm = 1;
    double r = 0.5;
    bool normalise = true;
    int d = 3;
    double noise_scale = 1e-8;
    std::uint64_t noise_seed = 0;
    int bins = 0;
    std::string bin_mode = "even";
    std::int64_t alphabet = 0;
    bool bias_correction = false;
  };

  RealMatrix to_symbols(const RealMatrix& data) const;
  TupleBlocks<double> make_tuples(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond) const;
  TupleBlocks<double> symbolic_tuples(const RealMatrix& source, const RealMatrix& dest) const;
  MeasureResult evaluate(const RealMatrix& source) const;
  bool resamplable() const;

  Measure measure_;
  Estimator estimator_;
  PropertyMap properties_;
  Settings settings_;
  bool initialised_ = false;
  ObservationStore<double> store_;
  // Pooled tuples after any normalisation and jitter; read-only once finalised.
  RealMatrix source_, target_, past_, cond_;
  std::int64_t alphabet_ = 0;
  std::optional<MeasureResult> result_;
};

}  // namespace infodyn
