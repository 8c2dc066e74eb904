#include "infodyn/ksg/neighbours.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infodyn/errors.hpp"

namespace infodyn::ksg {

namespace {

constexpr std::size_t kExhaustiveLimit = 2000;
constexpr std::size_t kLeafSize = 12;

bool closer(const Neighbour& a, const Neighbour& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool inside(double diff, double h, Boundary boundary) { return boundary == Boundary::strict ? diff < h : diff <= h; }

bool in_box(std::span<const double> p, std::span<const double> q, std::span<const double> h, Boundary boundary) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!inside(std::abs(p[i] - q[i]), h[i], boundary)) return false;
  return true;
}

/// Keeps the k best candidates as a max-heap under `closer`.
class Candidates {
 public:
  explicit Candidates(std::size_t k) : k_(k) { heap_.reserve(k); }
  bool full() const { return heap_.size() == k_; }
  const Neighbour& worst() const { return heap_.front(); }
  void offer(const Neighbour& n) {
    if (!full()) {
      heap_.push_back(n);
      std::push_heap(heap_.begin(), heap_.end(), closer);
    } else if (closer(n, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), closer);
      heap_.back() = n;
      std::push_heap(heap_.begin(), heap_.end(), closer);
    }
  }
  std::vector<Neighbour> sorted() && {
    std::sort_heap(heap_.begin(), heap_.end(), closer);
    return std::move(heap_);
  }

 private:
  std::size_t k_;
  std::vector<Neighbour> heap_;
};

}  // namespace

// Bounding boxes hold actual point coordinates, and floating-point
// subtraction is monotone, so box bounds on |p - q| hold exactly for every
// point below a node. Pruning is only done when a bound strictly excludes a
// node, which keeps results identical to the exhaustive scan.
struct NeighbourSearch::Tree {
  struct Node {
    std::uint32_t begin, end;
    std::int32_t left = -1, right = -1;
  };
  const RealMatrix& pts;
  std::size_t d;
  std::vector<std::uint32_t> order;
  std::vector<Node> nodes;
  std::vector<double> lo, hi;

  explicit Tree(const RealMatrix& points) : pts(points), d(points.cols()), order(points.rows()) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
    build(0, static_cast<std::uint32_t>(order.size()));
  }

  std::int32_t build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes.size());
    nodes.push_back({begin, end});
    lo.resize(lo.size() + d);
    hi.resize(hi.size() + d);
    double* l = &lo[static_cast<std::size_t>(id) * d];
    double* h = &hi[static_cast<std::size_t>(id) * d];
    std::size_t split = 0;
    double spread = -1.0;
    for (std::size_t c = 0; c < d; ++c) {
      l[c] = h[c] = pts(order[begin], c);
      for (std::uint32_t i = begin + 1; i < end; ++i) {
        l[c] = std::min(l[c], pts(order[i], c));
        h[c] = std::max(h[c], pts(order[i], c));
      }
      if (h[c] - l[c] > spread) {
        spread = h[c] - l[c];
        split = c;
      }
    }
    if (end - begin <= kLeafSize || spread <= 0.0) return id;
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double va = pts(a, split), vb = pts(b, split);
                       return va < vb || (va == vb && a < b);
                     });
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes[static_cast<std::size_t>(id)].left = left;
    nodes[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  double lower_bound(std::int32_t node, std::span<const double> q) const {
    const double* l = &lo[static_cast<std::size_t>(node) * d];
    const double* h = &hi[static_cast<std::size_t>(node) * d];
    double b = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      if (q[c] < l[c])
        b = std::max(b, l[c] - q[c]);
      else if (q[c] > h[c])
        b = std::max(b, q[c] - h[c]);
    }
    return b;
  }

  void nearest(std::int32_t node, std::size_t query, std::span<const double> q, Candidates& best) const {
    if (best.full() && lower_bound(node, q) > best.worst().distance) return;
    const Node& n = nodes[static_cast<std::size_t>(node)];
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const std::uint32_t j = order[i];
        if (j == query) continue;
        best.offer({distance(pts.row(j), q), j});
      }
      return;
    }
    const double bl = lower_bound(n.left, q), br = lower_bound(n.right, q);
    if (bl <= br) {
      nearest(n.left, query, q, best);
      nearest(n.right, query, q, best);
    } else {
      nearest(n.right, query, q, best);
      nearest(n.left, query, q, best);
    }
  }

  std::size_t count(std::int32_t node, std::span<const double> q, std::span<const double> half,
                    Boundary boundary) const {
    const Node& n = nodes[static_cast<std::size_t>(node)];
    const double* l = &lo[static_cast<std::size_t>(node) * d];
    const double* h = &hi[static_cast<std::size_t>(node) * d];
    bool contained = true;
    for (std::size_t c = 0; c < d; ++c) {
      const double gap = q[c] < l[c] ? l[c] - q[c] : (q[c] > h[c] ? q[c] - h[c] : 0.0);
      if (!inside(gap, half[c], boundary)) return 0;
      const double far = std::max(std::abs(l[c] - q[c]), std::abs(h[c] - q[c]));
      if (!inside(far, half[c], boundary)) contained = false;
    }
    if (contained) return n.end - n.begin;
    if (n.left < 0) {
      std::size_t total = 0;
      for (std::uint32_t i = n.begin; i < n.end; ++i)
        if (in_box(pts.row(order[i]), q, half, boundary)) ++total;
      return total;
    }
    return count(n.left, q, half, boundary) + count(n.right, q, half, boundary);
  }
};

NeighbourSearch::NeighbourSearch(const RealMatrix& points, SearchMethod method) : points_(points) {
  if (points_.cols() == 0) throw UsageError("neighbour search needs at least one dimension");
  if (method == SearchMethod::automatic)
    method = points_.rows() > kExhaustiveLimit ? SearchMethod::tree : SearchMethod::exhaustive;
  if (method == SearchMethod::tree && points_.rows() > 0) tree_ = std::make_unique<Tree>(points_);
}

NeighbourSearch::~NeighbourSearch() = default;
std::vector<Neighbour> NeighbourSearch::nearest(std::size_t query, std::size_t k) const {
  if (k == 0 || k >= points_.rows())
    throw UsageError("K must satisfy 1 <= K < N (K=" + std::to_string(k) + ", N=" + std::to_string(points_.rows()) +
                     ")");
  const auto q = points_.row(query);
  Candidates best(k);
  if (tree_) {
    tree_->nearest(0, query, q, best);
  } else {
    for (std::size_t j = 0; j < points_.rows(); ++j)
      if (j != query) best.offer({distance(points_.row(j), q), static_cast<std::uint32_t>(j)});
  }
  return std::move(best).sorted();
}

std::size_t NeighbourSearch::range_count(std::size_t query, std::span<const double> half_widths,
                                         Boundary boundary) const {
  if (half_widths.size() != points_.cols()) throw UsageError("one half-width per dimension is required");
  const auto q = points_.row(query);
  std::size_t total = 0;
  if (tree_) {
    total = tree_->count(0, q, half_widths, boundary);
  } else {
    for (std::size_t j = 0; j < points_.rows(); ++j)
      if (in_box(points_.row(j), q, half_widths, boundary)) ++total;
  }
  // the query point itself is inside the box unless a strict width is zero
  if (in_box(q, q, half_widths, boundary)) --total;
  return total;
}

std::size_t NeighbourSearch::range_count(std::size_t query, double radius, Boundary boundary) const {
  const std::vector<double> h(points_.cols(), radius);
  return range_count(query, h, boundary);
}

}  // namespace infodyn::ksg
