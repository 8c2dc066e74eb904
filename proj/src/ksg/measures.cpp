#include "infodyn/ksg/measures.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "infodyn/discretise.hpp"
#include "infodyn/embedding.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/special.hpp"

namespace infodyn::ksg {

namespace {

/// psi(n) for integer n in [1, size].
class DigammaTable {
 public:
  explicit DigammaTable(std::size_t size) : values_(size + 1, 0.0) {
    for (std::size_t n = 1; n <= size; ++n) values_[n] = digamma(static_cast<double>(n));
  }
  double operator()(std::size_t n) const { return values_.at(n); }

 private:
  std::vector<double> values_;
};

void check_config(int k, int algorithm, std::size_t n) {
  if (k < 1) throw UsageError("K must be >= 1");
  if (algorithm != 1 && algorithm != 2) throw UsageError("KSG algorithm must be 1 or 2");
  if (static_cast<std::size_t>(k) >= n)
    throw DataError("insufficient samples: K=" + std::to_string(k) + " needs more than " + std::to_string(k) +
                    " observations, got " + std::to_string(n));
}

void check_rows(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows()) throw DataError("variables must have equal numbers of observations");
}

/// Column ranges of the variables inside a joint matrix.
struct Block {
  std::size_t begin, end;
};

double block_distance(const RealMatrix& m, std::size_t i, std::size_t j, Block b) {
  double d = 0.0;
  for (std::size_t c = b.begin; c < b.end; ++c) d = std::max(d, std::abs(m(i, c) - m(j, c)));
  return d;
}

RealMatrix columns_of(const RealMatrix& m, std::initializer_list<Block> blocks) {
  std::vector<std::size_t> cols;
  for (const auto& b : blocks)
    for (std::size_t c = b.begin; c < b.end; ++c) cols.push_back(c);
  return m.select_columns(cols);
}

std::vector<double> half_widths(std::initializer_list<std::pair<Block, double>> parts) {
  std::vector<double> h;
  for (const auto& [b, r] : parts) h.insert(h.end(), b.end - b.begin, r);
  return h;
}

RealMatrix prepare(const RealMatrix& m, bool normalise) {
  require_finite(m.data());
  return normalise ? normalise_columns(m) : m;
}

}  // namespace

void add_jitter(std::vector<RealMatrix*> blocks, double noise_scale, std::uint64_t seed) {
  if (noise_scale < 0.0) throw UsageError("noise_scale must be >= 0");
  if (noise_scale == 0.0) return;
  std::mt19937_64 rng(seed);
  for (RealMatrix* m : blocks) {
    for (std::size_t c = 0; c < m->cols(); ++c) {
      const auto values = m->column_values(c);
      const double sd = sample_std(values);
      const double a = noise_scale * (sd > 0.0 ? sd : 1.0);
      for (std::size_t r = 0; r < m->rows(); ++r) {
        // 53 random bits mapped to [-1, 1); raw engine output keeps this platform independent
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        (*m)(r, c) += a * u;
      }
    }
  }
}

MeasureResult conditional_mi_tuples(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z, int k,
                                    int algorithm, SearchMethod method, std::size_t offset) {
  check_rows(x, y);
  if (z.cols() > 0) check_rows(x, z);
  if (x.cols() == 0 || y.cols() == 0) throw UsageError("variables need at least one column");
  const std::size_t n = x.rows();
  check_config(k, algorithm, n);
  const auto kk = static_cast<std::size_t>(k);
  const RealMatrix joint = hstack(hstack(x, y), z);
  const Block bx{0, x.cols()}, by{x.cols(), x.cols() + y.cols()}, bz{x.cols() + y.cols(), joint.cols()};
  const bool conditional = z.cols() > 0;
  const NeighbourSearch full(joint, method);
  // marginal spaces: (x, y) for MI; (xz, yz, z) for conditional MI
  const NeighbourSearch first(conditional ? columns_of(joint, {bx, bz}) : x, method);
  const NeighbourSearch second(conditional ? columns_of(joint, {by, bz}) : y, method);
  std::unique_ptr<NeighbourSearch> zs;
  if (conditional) zs = std::make_unique<NeighbourSearch>(z, method);
  const DigammaTable psi(n + 1);
  const double dk = static_cast<double>(k);
  std::vector<double> local(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = full.nearest(i, kk);
    if (algorithm == 1) {
      const double eps = nb.back().distance;
      const std::size_t n1 = first.range_count(i, eps, Boundary::strict);
      const std::size_t n2 = second.range_count(i, eps, Boundary::strict);
      if (conditional) {
        const std::size_t nz = zs->range_count(i, eps, Boundary::strict);
        local[i] = psi(kk) + psi(nz + 1) - psi(n1 + 1) - psi(n2 + 1);
      } else {
        local[i] = psi(kk) - psi(n1 + 1) - psi(n2 + 1) + psi(n);
      }
    } else {
      double ex = 0.0, ey = 0.0, ez = 0.0;
      for (const auto& m : nb) {
        ex = std::max(ex, block_distance(joint, i, m.index, bx));
        ey = std::max(ey, block_distance(joint, i, m.index, by));
        if (conditional) ez = std::max(ez, block_distance(joint, i, m.index, bz));
      }
      if (conditional) {
        const std::size_t nxz = first.range_count(i, half_widths({{bx, ex}, {bz, ez}}), Boundary::inclusive);
        const std::size_t nyz = second.range_count(i, half_widths({{by, ey}, {bz, ez}}), Boundary::inclusive);
        const std::size_t nz = zs->range_count(i, ez, Boundary::inclusive);
        local[i] = psi(kk) - 2.0 / dk + psi(nz) - psi(nxz) + 1.0 / static_cast<double>(nxz) - psi(nyz) +
                   1.0 / static_cast<double>(nyz);
      } else {
        const std::size_t nx = first.range_count(i, ex, Boundary::inclusive);
        const std::size_t ny = second.range_count(i, ey, Boundary::inclusive);
        local[i] = psi(kk) - 1.0 / dk - psi(nx) - psi(ny) + psi(n);
      }
    }
  }
  return result_from_locals(std::move(local), Units::nats, offset);
}

MeasureResult multi_info_tuples(const std::vector<RealMatrix>& variables, int k, int algorithm,
                                SearchMethod method) {
  if (variables.size() < 2) throw UsageError("multi-information needs at least two variables");
  RealMatrix joint;
  std::vector<Block> blocks;
  for (const auto& v : variables) {
    if (v.cols() == 0) throw UsageError("variables need at least one column");
    if (joint.cols() > 0) check_rows(joint, v);
    blocks.push_back({joint.cols(), joint.cols() + v.cols()});
    joint = hstack(joint, v);
  }
  const std::size_t n = joint.rows();
  check_config(k, algorithm, n);
  const auto kk = static_cast<std::size_t>(k);
  const NeighbourSearch full(joint, method);
  std::vector<std::unique_ptr<NeighbourSearch>> marginals;
  for (const auto& v : variables) marginals.push_back(std::make_unique<NeighbourSearch>(v, method));
  const DigammaTable psi(n + 1);
  const double m1 = static_cast<double>(variables.size() - 1);
  std::vector<double> local(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = full.nearest(i, kk);
    double value = 0.0;
    if (algorithm == 1) {
      const double eps = nb.back().distance;
      value = psi(kk) + m1 * psi(n);
      for (const auto& s : marginals) value -= psi(s->range_count(i, eps, Boundary::strict) + 1);
    } else {
      value = psi(kk) - m1 / static_cast<double>(k) + m1 * psi(n);
      for (std::size_t v = 0; v < blocks.size(); ++v) {
        double e = 0.0;
        for (const auto& m : nb) e = std::max(e, block_distance(joint, i, m.index, blocks[v]));
        value -= psi(marginals[v]->range_count(i, e, Boundary::inclusive));
      }
    }
    local[i] = value;
  }
  return result_from_locals(std::move(local), Units::nats);
}

MeasureResult kl_entropy_tuples(const RealMatrix& data, int k, SearchMethod method) {
  const std::size_t n = data.rows();
  check_config(k, 1, n);
  const auto kk = static_cast<std::size_t>(k);
  const NeighbourSearch search(data, method);
  const double constant = -digamma(static_cast<double>(k)) + digamma(static_cast<double>(n));
  const double d = static_cast<double>(data.cols());
  std::vector<double> local(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = search.nearest(i, kk).back().distance;
    if (!(eps > 0.0))
      throw DataError("zero nearest-neighbour distance (duplicate points); enable jitter with noise_scale > 0");
    local[i] = constant + d * std::log(2.0 * eps);
  }
  return result_from_locals(std::move(local), Units::nats);
}

MeasureResult kl_entropy(const RealMatrix& data, const KsgConfig& cfg) {
  if (data.cols() == 0) throw UsageError("entropy needs at least one column");
  RealMatrix d = prepare(data, false);
  add_jitter({&d}, cfg.noise_scale, cfg.seed);
  return kl_entropy_tuples(d, cfg.k, cfg.method);
}

MeasureResult mutual_info(const RealMatrix& x, const RealMatrix& y, const KsgConfig& cfg) {
  return conditional_mutual_info(x, y, RealMatrix(x.rows(), 0), cfg);
}

MeasureResult conditional_mutual_info(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z,
                                      const KsgConfig& cfg) {
  RealMatrix a = prepare(x, cfg.normalise), b = prepare(y, cfg.normalise), c = prepare(z, cfg.normalise);
  add_jitter({&a, &b, &c}, cfg.noise_scale, cfg.seed);
  return conditional_mi_tuples(a, b, c, cfg.k, cfg.algorithm, cfg.method);
}

MeasureResult multi_info(const RealMatrix& rows, const KsgConfig& cfg) {
  RealMatrix data = prepare(rows, cfg.normalise);
  add_jitter({&data}, cfg.noise_scale, cfg.seed);
  std::vector<RealMatrix> vars;
  for (std::size_t c = 0; c < data.cols(); ++c) vars.push_back(RealMatrix::column(data.column_values(c)));
  return multi_info_tuples(vars, cfg.k, cfg.algorithm, cfg.method);
}

MeasureResult transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const EmbeddingSpec& spec,
                               const KsgConfig& cfg) {
  return conditional_transfer_entropy(source, dest, RealMatrix(dest.rows(), 0), spec, cfg);
}

MeasureResult conditional_transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond,
                                           const EmbeddingSpec& spec, const KsgConfig& cfg) {
  auto b = transfer_tuples(prepare(source, cfg.normalise), prepare(dest, cfg.normalise),
                           prepare(cond, cfg.normalise), spec);
  RealMatrix given = hstack(b.past, b.conditional);
  add_jitter({&b.source, &b.target, &given}, cfg.noise_scale, cfg.seed);
  return conditional_mi_tuples(b.source, b.target, given, cfg.k, cfg.algorithm, cfg.method, b.offset);
}

MeasureResult active_info_storage(const RealMatrix& series, int k_history, int tau, const KsgConfig& cfg) {
  auto b = storage_tuples(prepare(series, cfg.normalise), k_history, tau);
  add_jitter({&b.source, &b.target}, cfg.noise_scale, cfg.seed);
  return conditional_mi_tuples(b.source, b.target, RealMatrix(b.target.rows(), 0), cfg.k, cfg.algorithm, cfg.method,
                               b.offset);
}

MeasureResult predictive_info(const RealMatrix& series, int k_history, int tau, const KsgConfig& cfg) {
  auto b = predictive_tuples(prepare(series, cfg.normalise), k_history, tau);
  add_jitter({&b.source, &b.target}, cfg.noise_scale, cfg.seed);
  return conditional_mi_tuples(b.source, b.target, RealMatrix(b.target.rows(), 0), cfg.k, cfg.algorithm, cfg.method,
                               b.offset);
}

}  // namespace infodyn::ksg
