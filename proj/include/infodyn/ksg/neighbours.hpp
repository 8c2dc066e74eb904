#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "infodyn/matrix.hpp"

// Max-norm neighbour queries over a fixed point set. Queries are always made
// about one of the indexed points and never count that point itself.
namespace infodyn::ksg {

enum class SearchMethod { automatic, exhaustive, tree };

struct Neighbour {
  double distance;
  std::uint32_t index;
};

/// Strict: |p_d - q_d| < h_d in every dimension d. Inclusive: <=.
enum class Boundary { strict, inclusive };

class NeighbourSearch {
 public:
  /// `automatic` scans exhaustively up to 2000 points and builds a k-d tree above that.
  explicit NeighbourSearch(const RealMatrix& points, SearchMethod method = SearchMethod::automatic);
  ~NeighbourSearch();
  NeighbourSearch(const NeighbourSearch&) = delete;
  NeighbourSearch& operator=(const NeighbourSearch&) = delete;

  /// The K nearest other points of point `query`, ordered by (distance, index).
  std::vector<Neighbour> nearest(std::size_t query, std::size_t k) const;

  /// Number of other points inside the box of half-widths `half_widths`
  /// (one per dimension) centred on point `query`.
  std::size_t range_count(std::size_t query, std::span<const double> half_widths, Boundary boundary) const;
  /// Same with one radius shared by every dimension.
  std::size_t range_count(std::size_t query, double radius, Boundary boundary) const;

  std::size_t size() const noexcept { return points_.rows(); }
  std::size_t dims() const noexcept { return points_.cols(); }
  bool uses_tree() const noexcept { return tree_ != nullptr; }

 private:
  struct Tree;
  RealMatrix points_;
  std::unique_ptr<Tree> tree_;
};

}  // namespace infodyn::ksg
