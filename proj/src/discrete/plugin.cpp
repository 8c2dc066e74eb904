#include "infodyn/discrete/plugin.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "infodyn/errors.hpp"

namespace infodyn::discrete {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw DataError("variables must have the same number of observations");
}

template <typename Key, typename Map>
StateIds relabel(const std::vector<Key>& keys, Map& ids) {
  StateIds out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(keys[i], static_cast<std::uint32_t>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

StateIds joint_states(const SymbolMatrix& rows) {
  const std::size_t n = rows.rows();
  if (rows.cols() == 0) return constant_states(n);
  int max_symbol = 0;
  for (int v : rows.data()) {
    if (v < 0) throw DataError("symbols must be non-negative");
    max_symbol = std::max(max_symbol, v);
  }
  const auto base = static_cast<std::uint64_t>(max_symbol) + 1;
  // Pack rows into one integer when the joint alphabet fits, else key on the row itself.
  bool fits = true;
  std::uint64_t capacity = 1;
  for (std::size_t c = 0; c < rows.cols() && fits; ++c) {
    if (capacity > std::numeric_limits<std::uint64_t>::max() / base) fits = false;
    capacity *= base;
  }
  if (fits) {
    std::vector<std::uint64_t> keys(n);
    for (std::size_t r = 0; r < n; ++r) {
      std::uint64_t key = 0;
      for (int v : rows.row(r)) key = key * base + static_cast<std::uint64_t>(v);
      keys[r] = key;
    }
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    ids.reserve(n);
    return relabel(keys, ids);
  }
  std::vector<std::vector<int>> keys(n);
  for (std::size_t r = 0; r < n; ++r) keys[r].assign(rows.row(r).begin(), rows.row(r).end());
  std::map<std::vector<int>, std::uint32_t> ids;
  return relabel(keys, ids);
}

StateIds join(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  require_same_length(a.size(), b.size());
  std::vector<std::uint64_t> keys(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) keys[i] = (static_cast<std::uint64_t>(a[i]) << 32) | b[i];
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  ids.reserve(a.size());
  return relabel(keys, ids);
}

StateIds constant_states(std::size_t n) { return StateIds(n, 0); }

CountTable::CountTable(std::span<const std::uint32_t> states) {
  for (std::uint32_t s : states) {
    if (s >= counts_.size()) counts_.resize(s + 1, 0);
    ++counts_[s];
  }
  total_ = states.size();
}

std::vector<double> local_entropy(std::span<const std::uint32_t> x) {
  const CountTable counts(x);
  const auto n = static_cast<double>(counts.total());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -std::log2(static_cast<double>(counts.count(x[i])) / n);
  return out;
}

std::vector<double> local_conditional_entropy(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
  require_same_length(x.size(), y.size());
  const StateIds xy = join(x, y);
  const CountTable joint(xy);
  const CountTable given(y);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = -std::log2(static_cast<double>(joint.count(xy[i])) / static_cast<double>(given.count(y[i])));
  return out;
}

std::vector<double> local_conditional_mutual_info(std::span<const std::uint32_t> x,
                                                  std::span<const std::uint32_t> y,
                                                  std::span<const std::uint32_t> z) {
  require_same_length(x.size(), y.size());
  require_same_length(x.size(), z.size());
  const StateIds xz = join(x, z);
  const StateIds yz = join(y, z);
  const StateIds xyz = join(xz, y);
  const CountTable n_xz(xz), n_yz(yz), n_xyz(xyz), n_z(z);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double num = static_cast<double>(n_xyz.count(xyz[i])) * static_cast<double>(n_z.count(z[i]));
    const double den = static_cast<double>(n_xz.count(xz[i])) * static_cast<double>(n_yz.count(yz[i]));
    out[i] = std::log2(num / den);
  }
  return out;
}

}  // namespace infodyn::discrete
