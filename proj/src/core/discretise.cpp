#include "infodyn/discretise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "infodyn/errors.hpp"

namespace infodyn {

std::vector<std::int64_t> combine_values(const SymbolMatrix& rows, const Alphabet& alphabet) {
  alphabet.joint_size(rows.cols());  // overflow check
  const std::int64_t m = alphabet.size();
  std::vector<std::int64_t> out(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    std::int64_t v = 0;
    for (int s : rows.row(r)) {
      if (s < 0 || s >= m)
        throw DataError("symbol out of alphabet: " + std::to_string(s) + " not in [0, " + std::to_string(m) + ")");
      v = v * m + s;
    }
    out[r] = v;
  }
  return out;
}

std::vector<int> decode_value(std::int64_t value, const Alphabet& alphabet, std::size_t variables) {
  if (value < 0 || value >= alphabet.joint_size(variables))
    throw DataError("combined value " + std::to_string(value) + " outside joint alphabet");
  std::vector<int> out(variables);
  for (std::size_t i = variables; i-- > 0;) {
    out[i] = static_cast<int>(value % alphabet.size());
    value /= alphabet.size();
  }
  return out;
}

BinMode parse_bin_mode(std::string_view name) {
  if (name == "even") return BinMode::even;
  if (name == "max_entropy" || name == "maxent") return BinMode::max_entropy;
  throw UsageError("unknown bin mode '" + std::string(name) + "' (expected even|max_entropy)");
}

std::vector<int> discretise(std::span<const double> series, int bins, BinMode mode) {
  if (bins < 2) throw UsageError("number of bins must be >= 2");
  require_finite(series);
  std::vector<int> out(series.size(), 0);
  if (series.empty()) return out;
  if (mode == BinMode::even) {
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    const double min = *lo;
    const double width = (*hi - min) / bins;
    if (!(width > 0.0)) return out;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const auto b = static_cast<int>(std::floor((series[i] - min) / width));
      out[i] = std::clamp(b, 0, bins - 1);
    }
    return out;
  }
  if (static_cast<std::size_t>(bins) > series.size())
    throw DataError("max-entropy binning needs at least as many samples as bins (" + std::to_string(bins) + ")");
  std::vector<std::size_t> order(series.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });
  const std::size_t n = series.size();
  for (std::size_t rank = 0; rank < n; ++rank)
    out[order[rank]] = static_cast<int>(rank * static_cast<std::size_t>(bins) / n);
  return out;
}

double sample_std(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

std::vector<double> normalise(std::span<const double> series) {
  std::vector<double> out(series.size(), 0.0);
  const double m = mean(series);
  const double sd = sample_std(series);
  if (!(sd > 0.0)) return out;
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - m) / sd;
  return out;
}

RealMatrix normalise_columns(const RealMatrix& data) {
  RealMatrix out = data;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    const auto col = data.column_values(c);
    const auto z = normalise(col);
    out.set_column(c, z);
  }
  return out;
}

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) throw DataError("non-finite value at index " + std::to_string(i));
}

}  // namespace infodyn
