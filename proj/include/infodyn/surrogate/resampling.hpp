#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Deterministic resampling schedules. Surrogate i depends only on
// (seed, i), so surrogates may be generated in any order or in parallel and
// still agree bit-for-bit.
namespace infodyn::surrogate {

/// SplitMix64 generator: small state, full 2^64 period, well mixed outputs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  /// Uniform draw from [0, bound) by Lemire's multiply-and-reject method; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Seed of the stream used by surrogate `index`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Uniformly random permutation of 0..n-1 (Fisher-Yates) for surrogate `index`.
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed, std::uint64_t index);

/// Distinct cyclic shifts in [1, n-1], one per surrogate, drawn without
/// replacement. Throws UsageError when count > n - 1, since some rotation
/// would then repeat.
std::vector<std::size_t> rotation_shifts(std::size_t n, std::size_t count, std::uint64_t seed);

/// Row order of a cyclic shift: order[i] = (i + shift) mod n.
std::vector<std::size_t> rotation(std::size_t n, std::size_t shift);

}  // namespace infodyn::surrogate
