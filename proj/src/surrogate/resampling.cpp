#include "infodyn/surrogate/resampling.hpp"

#include <numeric>
#include <string>
#include <unordered_map>

#include "infodyn/errors.hpp"

namespace infodyn::surrogate {

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(seed);
  SplitMix64 b(a.next() ^ (index * 0xd1b54a32d192ed03ULL));
  return b.next();
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(stream_seed(seed, index));
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::vector<std::size_t> rotation_shifts(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (n < 2 || count > n - 1)
    throw UsageError("duplicate rotation: " + std::to_string(count) + " surrogates requested but only " +
                     std::to_string(n < 2 ? 0 : n - 1) + " distinct rotations of " + std::to_string(n) +
                     " tuples exist");
  // Partial Fisher-Yates over the virtual array 1..n-1; only displaced
  // entries are stored, so the cost is O(count) whatever n is.
  std::unordered_map<std::size_t, std::size_t> displaced;
  auto at = [&](std::size_t i) {
    const auto it = displaced.find(i);
    return it == displaced.end() ? i + 1 : it->second;
  };
  SplitMix64 rng(stream_seed(seed, ~std::uint64_t{0}));
  std::vector<std::size_t> shifts(count);
  const std::size_t m = n - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
    shifts[i] = at(j);
    displaced[j] = at(i);
  }
  return shifts;
}

std::vector<std::size_t> rotation(std::size_t n, std::size_t shift) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = (i + shift) % n;
  return order;
}

}  // namespace infodyn::surrogate
