#include "infodyn/kernel/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "infodyn/discretise.hpp"
#include "infodyn/embedding.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/special.hpp"

namespace infodyn::kernel {

namespace {

constexpr std::size_t kNaiveLimit = 2000;
constexpr std::size_t kGridDims = 3;

bool within(std::span<const double> a, std::span<const double> b, double r) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > r) return false;
  return true;
}

std::vector<std::uint32_t> naive_counts(const RealMatrix& pts, double r) {
  const std::size_t n = pts.rows();
  std::vector<std::uint32_t> counts(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (within(pts.row(i), pts.row(j), r)) {
        ++counts[i];
        ++counts[j];
      }
  return counts;
}

struct CellHash {
  std::size_t operator()(const std::array<std::int64_t, kGridDims>& c) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

// Cells are indexed on the first (up to) three dimensions. With width w > r,
// two coordinates within r of each other land in equal or adjacent cells, so
// scanning the 3^g neighbouring cells finds every candidate; the full
// max-norm test then decides membership exactly as the naive scan does.
std::vector<std::uint32_t> box_counts(const RealMatrix& pts, double r) {
  const std::size_t n = pts.rows();
  const std::size_t g = std::min(kGridDims, pts.cols());
  const double w = r * (1.0 + 1e-9);
  using Cell = std::array<std::int64_t, kGridDims>;
  std::vector<Cell> cell_of(n);
  std::unordered_map<Cell, std::vector<std::uint32_t>, CellHash> grid;
  for (std::size_t i = 0; i < n; ++i) {
    Cell c{};
    for (std::size_t d = 0; d < g; ++d) c[d] = static_cast<std::int64_t>(std::floor(pts(i, d) / w));
    cell_of[i] = c;
    grid[c].push_back(static_cast<std::uint32_t>(i));
  }
  std::size_t combos = 1;
  for (std::size_t d = 0; d < g; ++d) combos *= 3;
  std::vector<std::uint32_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t code = 0; code < combos; ++code) {
      Cell c = cell_of[i];
      std::size_t rest = code;
      for (std::size_t d = 0; d < g; ++d) {
        c[d] += static_cast<std::int64_t>(rest % 3) - 1;
        rest /= 3;
      }
      const auto it = grid.find(c);
      if (it == grid.end()) continue;
      for (std::uint32_t j : it->second)
        if (within(pts.row(i), pts.row(j), r)) ++counts[i];
    }
  }
  return counts;
}

void check_width(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw UsageError("kernel width r must be > 0");
}

RealMatrix prepare(const RealMatrix& m, bool normalise) {
  require_finite(m.data());
  return normalise ? normalise_columns(m) : m;
}

double lg(std::uint32_t c) { return std::log2(static_cast<double>(c)); }

}  // namespace

double density_at(std::span<const double> point, const RealMatrix& samples, double r) {
  check_width(r);
  if (point.size() != samples.cols()) throw UsageError("point and samples have different dimensions");
  if (samples.rows() == 0) throw DataError("no samples");
  std::size_t c = 0;
  for (std::size_t m = 0; m < samples.rows(); ++m)
    if (within(point, samples.row(m), r)) ++c;
  return static_cast<double>(c) / static_cast<double>(samples.rows());
}

std::vector<std::uint32_t> neighbour_counts(const RealMatrix& points, double r, CountMethod method) {
  check_width(r);
  if (points.cols() == 0) return std::vector<std::uint32_t>(points.rows(), static_cast<std::uint32_t>(points.rows()));
  if (method == CountMethod::automatic) method = points.rows() > kNaiveLimit ? CountMethod::box : CountMethod::naive;
  return method == CountMethod::naive ? naive_counts(points, r) : box_counts(points, r);
}

MeasureResult entropy(const RealMatrix& data, const KernelConfig& cfg) {
  if (data.rows() == 0) throw DataError("no samples");
  const auto counts = neighbour_counts(prepare(data, cfg.normalise), cfg.r, cfg.method);
  const double ln = std::log2(static_cast<double>(data.rows()));
  std::vector<double> local(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) local[i] = ln - lg(counts[i]);
  return result_from_locals(std::move(local), Units::bits);
}

MeasureResult mutual_info_tuples(const RealMatrix& x, const RealMatrix& y, double r, CountMethod method,
                                 std::size_t offset) {
  if (x.rows() != y.rows()) throw DataError("variables must have equal numbers of observations");
  if (x.rows() == 0) throw DataError("no samples");
  const auto nx = neighbour_counts(x, r, method);
  const auto ny = neighbour_counts(y, r, method);
  const auto nxy = neighbour_counts(hstack(x, y), r, method);
  const double ln = std::log2(static_cast<double>(x.rows()));
  std::vector<double> local(x.rows());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = (ln - lg(nx[i])) + (lg(nxy[i]) - lg(ny[i]));
  return result_from_locals(std::move(local), Units::bits, offset);
}

MeasureResult mutual_info(const RealMatrix& x, const RealMatrix& y, const KernelConfig& cfg) {
  return mutual_info_tuples(prepare(x, cfg.normalise), prepare(y, cfg.normalise), cfg.r, cfg.method);
}

MeasureResult multi_info(const RealMatrix& rows, const KernelConfig& cfg) {
  if (rows.cols() < 2) throw UsageError("multi-information needs at least two variables");
  if (rows.rows() == 0) throw DataError("no samples");
  const RealMatrix data = prepare(rows, cfg.normalise);
  const auto joint = neighbour_counts(data, cfg.r, cfg.method);
  const double ln = std::log2(static_cast<double>(rows.rows()));
  std::vector<double> local(rows.rows());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = lg(joint[i]) - ln;
  for (std::size_t c = 0; c < rows.cols(); ++c) {
    const auto counts = neighbour_counts(RealMatrix::column(data.column_values(c)), cfg.r, cfg.method);
    for (std::size_t i = 0; i < local.size(); ++i) local[i] += ln - lg(counts[i]);
  }
  return result_from_locals(std::move(local), Units::bits);
}

MeasureResult transfer_entropy_tuples(const RealMatrix& source, const RealMatrix& next, const RealMatrix& past,
                                      double r, CountMethod method, bool bias_correction, std::size_t offset) {
  if (source.rows() != next.rows() || (past.cols() > 0 && past.rows() != next.rows()))
    throw DataError("variables must have equal numbers of observations");
  if (next.rows() == 0) throw DataError("no samples");
  const RealMatrix past_source = hstack(past, source);
  const auto n_full = neighbour_counts(hstack(next, past_source), r, method);
  const auto n_ps = neighbour_counts(past_source, r, method);
  const auto n_np = neighbour_counts(hstack(next, past), r, method);
  const auto n_p = neighbour_counts(past, r, method);
  std::vector<double> local(next.rows());
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (bias_correction)
      local[i] = (digamma(n_full[i]) + digamma(n_p[i]) - digamma(n_ps[i]) - digamma(n_np[i])) / std::numbers::ln2;
    else
      local[i] = lg(n_full[i]) + lg(n_p[i]) - lg(n_ps[i]) - lg(n_np[i]);
  }
  return result_from_locals(std::move(local), Units::bits, offset);
}

MeasureResult transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const EmbeddingSpec& spec,
                               const KernelConfig& cfg) {
  check_width(cfg.r);
  const auto b = transfer_tuples(prepare(source, cfg.normalise), prepare(dest, cfg.normalise),
                                 RealMatrix(dest.rows(), 0), spec);
  return transfer_entropy_tuples(b.source, b.target, b.past, cfg.r, cfg.method, cfg.bias_correction, b.offset);
}

MeasureResult active_info_storage(const RealMatrix& series, int k, int tau, const KernelConfig& cfg) {
  check_width(cfg.r);
  const auto b = storage_tuples(prepare(series, cfg.normalise), k, tau);
  return mutual_info_tuples(b.source, b.target, cfg.r, cfg.method, b.offset);
}

double suggest_min_width(std::size_t n, std::size_t d, std::size_t k_min) {
  if (n == 0 || d == 0 || k_min == 0) throw UsageError("suggest_min_width needs N, d and K_min >= 1");
  return 3.0 * std::pow(static_cast<double>(k_min) / static_cast<double>(n), 1.0 / static_cast<double>(d));
}

}  // namespace infodyn::kernel
