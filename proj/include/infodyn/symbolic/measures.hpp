#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infodyn/types.hpp"

// Ordinal-pattern estimators. Each length-d window is replaced by its rank
// pattern and the discrete plug-in machinery is applied to the pattern ids.
// Results are in bits.
namespace infodyn::symbolic {

constexpr int kMaxPatternLength = 8;

/// o_i = number of components larger than x_i, so the largest component gets
/// 0 and the smallest d-1. Of two equal components the later one counts as larger.
std::vector<int> ordinalize(std::span<const double> window);

/// Lehmer code of a permutation of {0..d-1}: a dense id in [0, d!).
std::int64_t encode_pattern(std::span<const int> ranks);
std::vector<int> decode_pattern(std::int64_t id, int d);

/// d! as an alphabet size.
std::int64_t pattern_count(int d);

/// Pattern id of every window {x[t-(d-1)tau], ..., x[t]}, t = (d-1)tau .. N-1.
std::vector<int> pattern_series(std::span<const double> series, int d, int tau = 1);

/// Plug-in entropy of the pattern ids; the first (d-1)tau samples have no local value.
MeasureResult permutation_entropy(std::span<const double> series, int d, int tau = 1);

/// Symbolic transfer entropy I(S_{t-u}; P_t | P_{t-1}) where P_t is the
/// destination pattern of the window ending at t (delay tau_k) and S_{t-u}
/// the source pattern of the window ending at t-u (delay tau_l). The pattern
/// length d plays the role of the embedding length, so spec.k and spec.l must be 1.
MeasureResult symbolic_te(std::span<const double> source, std::span<const double> dest, const EmbeddingSpec& spec,
                          int d);

}  // namespace infodyn::symbolic
