#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace infodyn {

enum class Units { bits, nats };

std::string_view to_string(Units units);

/// An averaged information measure together with its local (pointwise) values.
///
/// `local` holds one value per observation tuple, in the order the tuples
/// were added. For a single time series the first `offset` samples have no
/// local value (the embedding history is not available); `aligned_local()`
/// pads them with zeros so the series lines up with the raw input.
struct MeasureResult {
  double average = 0.0;
  Units units = Units::bits;
  std::vector<double> local;
  std::size_t n_observations = 0;
  std::size_t offset = 0;

  std::vector<double> aligned_local() const;
};

/// Builds a result whose average is the mean of the given local values.
MeasureResult result_from_locals(std::vector<double> local, Units units, std::size_t offset = 0);

double mean(std::span<const double> values);

/// Number of discrete symbols a variable may take; symbols are 0..size-1.
class Alphabet {
 public:
  explicit Alphabet(std::int64_t size);
  std::int64_t size() const noexcept { return size_; }
  /// Alphabet of a joint variable of `variables` components, M^variables.
  /// Throws DataError on overflow of 63 bits.
  std::int64_t joint_size(std::size_t variables) const;

 private:
  std::int64_t size_;
};

/// Embedding of destination past (k, tau_k) and source state (l, tau_l) with
/// source-destination lag u. The predicted destination value is always the
/// sample immediately after the end of the destination past.
struct EmbeddingSpec {
  int k = 1;
  int tau_k = 1;
  int l = 1;
  int tau_l = 1;
  int u = 1;

  void validate() const;
  /// First time index whose next-value tuple is complete:
  /// max((k-1)*tau_k + 1, (l-1)*tau_l + u).
  std::size_t offset() const;
};

}  // namespace infodyn
