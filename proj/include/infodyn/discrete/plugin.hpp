#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infodyn/matrix.hpp"

namespace infodyn::discrete {

/// Dense relabelling of joint states: equal rows get equal ids, ids are
/// assigned 0, 1, 2, ... in order of first appearance.
using StateIds = std::vector<std::uint32_t>;

StateIds joint_states(const SymbolMatrix& rows);
/// Joint state of two already-relabelled variables.
StateIds join(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
/// A variable with a single state (used for absent conditioning).
StateIds constant_states(std::size_t n);

/// Occurrence counts of dense state ids.
class CountTable {
 public:
  explicit CountTable(std::span<const std::uint32_t> states);
  std::uint64_t count(std::uint32_t state) const { return counts_[state]; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// -log2 p(x_n) for every observation.
std::vector<double> local_entropy(std::span<const std::uint32_t> x);
/// -log2 p(x_n | y_n).
std::vector<double> local_conditional_entropy(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y);
/// log2 [ p(x,y,z) p(z) / (p(x,z) p(y,z)) ]; with a constant z this is the local MI.
std::vector<double> local_conditional_mutual_info(std::span<const std::uint32_t> x,
                                                  std::span<const std::uint32_t> y,
                                                  std::span<const std::uint32_t> z);

}  // namespace infodyn::discrete
