#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "infodyn/matrix.hpp"
#include "infodyn/types.hpp"

namespace infodyn {

/// Each row [v_0..v_{d-1}] becomes the base-M number sum v_i M^(d-1-i)
/// (leftmost column most significant).
std::vector<std::int64_t> combine_values(const SymbolMatrix& rows, const Alphabet& alphabet);
/// Inverse of combine_values for a single symbol.
std::vector<int> decode_value(std::int64_t value, const Alphabet& alphabet, std::size_t variables);

enum class BinMode { even, max_entropy };
BinMode parse_bin_mode(std::string_view name);

/// Even mode: equal-width bins over [min, max]; a value on an interior edge
/// goes to the upper bin, the maximum to the top bin, and a constant series
/// maps to bin 0. Max-entropy mode: rank-based bins (ties ranked by index)
/// whose occupancies differ by at most one.
std::vector<int> discretise(std::span<const double> series, int bins, BinMode mode);

/// Zero-mean, unit sample standard deviation (N-1 divisor). Constant input gives zeros.
std::vector<double> normalise(std::span<const double> series);
/// Applies normalise() to each column.
RealMatrix normalise_columns(const RealMatrix& data);

/// Sample standard deviation with the N-1 divisor (0 for fewer than 2 samples).
double sample_std(std::span<const double> values);

/// Throws DataError unless every value is finite.
void require_finite(std::span<const double> values);

}  // namespace infodyn
