#include "infodyn/symbolic/measures.hpp"

#include <algorithm>
#include <string>

#include "infodyn/discrete/plugin.hpp"
#include "infodyn/discretise.hpp"
#include "infodyn/embedding.hpp"
#include "infodyn/errors.hpp"

namespace infodyn::symbolic {

namespace {

void check_length(int d) {
  if (d < 2 || d > kMaxPatternLength)
    throw UsageError("pattern length d must be in [2, " + std::to_string(kMaxPatternLength) + "], got " +
                     std::to_string(d));
}

discrete::StateIds as_states(std::span<const int> ids) {
  return discrete::joint_states(SymbolMatrix::column(std::vector<int>(ids.begin(), ids.end())));
}

}  // namespace

std::vector<int> ordinalize(std::span<const double> window) {
  check_length(static_cast<int>(window.size()));
  std::vector<int> ranks(window.size(), 0);
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = 0; j < window.size(); ++j)
      if (window[j] > window[i] || (window[j] == window[i] && j > i)) ++ranks[i];
  return ranks;
}

std::int64_t encode_pattern(std::span<const int> ranks) {
  const auto d = static_cast<int>(ranks.size());
  check_length(d);
  std::int64_t id = 0;
  for (int i = 0; i < d; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < d; ++j)
      if (ranks[static_cast<std::size_t>(j)] < ranks[static_cast<std::size_t>(i)]) ++smaller_after;
    id = id * (d - i) + smaller_after;
  }
  return id;
}

std::vector<int> decode_pattern(std::int64_t id, int d) {
  check_length(d);
  if (id < 0 || id >= pattern_count(d)) throw UsageError("pattern id out of range");
  std::vector<int> digits(static_cast<std::size_t>(d));
  for (int i = d - 1; i >= 0; --i) {
    const int base = d - i;
    digits[static_cast<std::size_t>(i)] = static_cast<int>(id % base);
    id /= base;
  }
  std::vector<int> unused(static_cast<std::size_t>(d));
  for (int v = 0; v < d; ++v) unused[static_cast<std::size_t>(v)] = v;
  std::vector<int> ranks(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const auto pos = static_cast<std::ptrdiff_t>(digits[i]);
    ranks[i] = unused[static_cast<std::size_t>(pos)];
    unused.erase(unused.begin() + pos);
  }
  return ranks;
}

std::int64_t pattern_count(int d) {
  check_length(d);
  std::int64_t f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

std::vector<int> pattern_series(std::span<const double> series, int d, int tau) {
  check_length(d);
  require_finite(series);
  const auto windows = embed<double>(series, d, tau);
  std::vector<int> ids(windows.rows());
  for (std::size_t i = 0; i < ids.size(); ++i)
    ids[i] = static_cast<int>(encode_pattern(ordinalize(windows.row(i))));
  return ids;
}

MeasureResult permutation_entropy(std::span<const double> series, int d, int tau) {
  const auto ids = pattern_series(series, d, tau);
  return result_from_locals(discrete::local_entropy(as_states(ids)), Units::bits,
                            static_cast<std::size_t>((d - 1) * tau));
}

MeasureResult symbolic_te(std::span<const double> source, std::span<const double> dest, const EmbeddingSpec& spec,
                          int d) {
  spec.validate();
  check_length(d);
  if (spec.k != 1 || spec.l != 1)
    throw UsageError("symbolic TE embeds through the pattern length d; k and l must be 1");
  if (source.size() != dest.size()) throw DataError("source and destination lengths differ");
  const auto span_k = static_cast<std::size_t>((d - 1) * spec.tau_k);
  const auto span_l = static_cast<std::size_t>((d - 1) * spec.tau_l);
  const std::size_t offset = std::max(span_k + 1, span_l + static_cast<std::size_t>(spec.u));
  detail::require_samples(dest.size(), offset + 1);
  // dest_ids[i] is the pattern of the window ending at i + span_k; likewise for the source
  const auto dest_ids = pattern_series(dest, d, spec.tau_k);
  const auto source_ids = pattern_series(source, d, spec.tau_l);
  const std::size_t rows = dest.size() - offset;
  std::vector<int> src(rows), next(rows), past(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = offset + i;
    next[i] = dest_ids[t - span_k];
    past[i] = dest_ids[t - 1 - span_k];
    src[i] = source_ids[t - static_cast<std::size_t>(spec.u) - span_l];
  }
  return result_from_locals(
      discrete::local_conditional_mutual_info(as_states(src), as_states(next), as_states(past)), Units::bits,
      offset);
}

}  // namespace infodyn::symbolic
