#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infodyn/matrix.hpp"
#include "infodyn/types.hpp"

// Box-kernel estimators: p(x_n) is the fraction of samples x_m (x_n itself
// included) with max_i |x_{n,i} - x_{m,i}| <= r. Results are in bits and the
// average is always the mean of the locals.
namespace infodyn::kernel {

enum class CountMethod { automatic, naive, box };

struct KernelConfig {
  /// Shared kernel width; in standard deviations when `normalise` is set.
  double r = 0.5;
  bool normalise = true;
  /// TE only: replaces each log count by digamma(count) (Grassberger's
  /// correction applied to every entropy term).
  bool bias_correction = false;
  CountMethod method = CountMethod::automatic;
};

/// Fraction of samples within max-norm distance r of `point` (inclusive).
double density_at(std::span<const double> point, const RealMatrix& samples, double r);

/// For every row n, the number of rows m (n included) with max-norm
/// distance <= r. `naive` scans all pairs; `box` hashes rows into a grid of
/// cells of width slightly above r and scans only adjacent cells; both give
/// identical counts. `automatic` uses the grid above 2000 rows.
std::vector<std::uint32_t> neighbour_counts(const RealMatrix& points, double r,
                                            CountMethod method = CountMethod::automatic);

MeasureResult entropy(const RealMatrix& data, const KernelConfig& cfg = {});

MeasureResult mutual_info(const RealMatrix& x, const RealMatrix& y, const KernelConfig& cfg = {});

/// Multi-information over the (univariate) columns of `rows`.
MeasureResult multi_info(const RealMatrix& rows, const KernelConfig& cfg = {});

MeasureResult transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const EmbeddingSpec& spec,
                               const KernelConfig& cfg = {});

MeasureResult active_info_storage(const RealMatrix& series, int k, int tau = 1, const KernelConfig& cfg = {});

/// Tuple-level forms used by calculators that pool observations from
/// several trials. Inputs are already normalised when required.
MeasureResult mutual_info_tuples(const RealMatrix& x, const RealMatrix& y, double r, CountMethod method,
                                 std::size_t offset = 0);
MeasureResult transfer_entropy_tuples(const RealMatrix& source, const RealMatrix& next, const RealMatrix& past,
                                      double r, CountMethod method, bool bias_correction, std::size_t offset = 0);

/// Smallest width r (in standard deviations, data spanning about ±3) that
/// leaves at least k_min samples per box on average: 3 (k_min / N)^(1/d).
double suggest_min_width(std::size_t n, std::size_t d, std::size_t k_min);

}  // namespace infodyn::kernel
