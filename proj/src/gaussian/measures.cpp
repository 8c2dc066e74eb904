#include "infodyn/gaussian/measures.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "infodyn/discretise.hpp"
#include "infodyn/embedding.hpp"
#include "infodyn/errors.hpp"

namespace infodyn::gaussian {

namespace {

using EMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMatrix> view(const RealMatrix& m) {
  return Eigen::Map<const EMatrix>(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                   static_cast<Eigen::Index>(m.cols()));
}

std::string describe(const std::vector<std::size_t>& dims) {
  std::string s = "{";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "}";
}

/// Lower Cholesky factor; returns the index of the first pivot below the
/// threshold, or -1 when the factorisation succeeds.
long cholesky(const Eigen::MatrixXd& a, Eigen::MatrixXd& l) {
  const Eigen::Index d = a.rows();
  l = Eigen::MatrixXd::Zero(d, d);
  const double max_diag = d > 0 ? a.diagonal().maxCoeff() : 0.0;
  const double threshold = 1e-12 * max_diag;
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > threshold) || max_diag <= 0.0) return static_cast<long>(j);
    l(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < d; ++i) {
      double v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return -1;
}

/// Joint sample of all variables with its mean and covariance; answers
/// entropy queries for any subset of columns.
class JointModel {
 public:
  explicit JointModel(const RealMatrix& data) : data_(view(data)) {
    require_finite(data.data());
    if (data.rows() <= data.cols())
      throw DataError("insufficient samples: need more than " + std::to_string(data.cols()) +
                      " observations, got " + std::to_string(data.rows()));
    mu_ = data_.colwise().mean();
    centred_ = data_.rowwise() - mu_.transpose();
    cov_ = (centred_.transpose() * centred_) / static_cast<double>(data.rows() - 1);
  }

  /// Local entropies -ln p(x_n) over the given columns, and ½ ln |Ω_S| via `half_log_det`.
  std::vector<double> local_entropy(const std::vector<std::size_t>& dims, double& half_log_det) const {
    const auto d = static_cast<Eigen::Index>(dims.size());
    const auto n = static_cast<std::size_t>(centred_.rows());
    std::vector<double> out(n, 0.0);
    half_log_det = 0.0;
    if (d == 0) return out;
    Eigen::MatrixXd sub(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        sub(i, j) = cov_(static_cast<Eigen::Index>(dims[static_cast<std::size_t>(i)]),
                         static_cast<Eigen::Index>(dims[static_cast<std::size_t>(j)]));
    Eigen::MatrixXd l;
    const long bad = cholesky(sub, l);
    if (bad >= 0)
      throw DataError("degenerate covariance over dimensions " + describe(dims) + " (pivot at dimension " +
                      std::to_string(dims[static_cast<std::size_t>(bad)]) + ")");
    for (Eigen::Index j = 0; j < d; ++j) half_log_det += std::log(l(j, j));
    const double constant = 0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + half_log_det;
    Eigen::VectorXd v(d);
    for (std::size_t r = 0; r < n; ++r) {
      for (Eigen::Index j = 0; j < d; ++j)
        v(j) = centred_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(dims[static_cast<std::size_t>(j)]));
      const Eigen::VectorXd w = l.triangularView<Eigen::Lower>().solve(v);
      out[r] = constant + 0.5 * w.squaredNorm();
    }
    return out;
  }

  std::size_t rows() const { return static_cast<std::size_t>(centred_.rows()); }

 private:
  Eigen::Map<const EMatrix> data_;
  Eigen::VectorXd mu_;
  EMatrix centred_;
  Eigen::MatrixXd cov_;
};

std::vector<std::size_t> range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t i = begin; i < end; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

MeasureResult cmi_from_blocks(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z, std::size_t offset) {
  if (x.rows() != y.rows() || (z.cols() > 0 && z.rows() != x.rows()))
    throw DataError("variables must have equal numbers of observations");
  if (x.cols() == 0 || y.cols() == 0) throw UsageError("variables need at least one column");
  const RealMatrix joint = hstack(hstack(x, y), z);
  const JointModel model(joint);
  const auto xs = range(0, x.cols());
  const auto ys = range(x.cols(), x.cols() + y.cols());
  const auto zs = range(x.cols() + y.cols(), joint.cols());
  double ignored = 0.0;
  const auto h_xz = model.local_entropy(concat(xs, zs), ignored);
  const auto h_yz = model.local_entropy(concat(ys, zs), ignored);
  const auto h_z = model.local_entropy(zs, ignored);
  const auto h_xyz = model.local_entropy(range(0, joint.cols()), ignored);
  std::vector<double> local(model.rows());
  for (std::size_t i = 0; i < local.size(); ++i) local[i] = h_xz[i] + h_yz[i] - h_z[i] - h_xyz[i];
  return result_from_locals(std::move(local), Units::nats, offset);
}

}  // namespace

RealMatrix covariance(const RealMatrix& data) {
  if (data.rows() < 2) throw DataError("insufficient samples: need at least 2, got " + std::to_string(data.rows()));
  const auto m = view(data);
  const EMatrix centred = m.rowwise() - m.colwise().mean();
  const Eigen::MatrixXd c = (centred.transpose() * centred) / static_cast<double>(data.rows() - 1);
  RealMatrix out(data.cols(), data.cols());
  for (std::size_t i = 0; i < data.cols(); ++i)
    for (std::size_t j = 0; j < data.cols(); ++j)
      out(i, j) = c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

double half_log_det(const RealMatrix& cov) {
  if (cov.rows() != cov.cols()) throw UsageError("covariance must be square");
  Eigen::MatrixXd a = view(cov);
  Eigen::MatrixXd l;
  const long bad = cholesky(a, l);
  if (bad >= 0) throw DataError("degenerate covariance (pivot at dimension " + std::to_string(bad) + ")");
  double s = 0.0;
  for (Eigen::Index j = 0; j < l.rows(); ++j) s += std::log(l(j, j));
  return s;
}

MeasureResult entropy(const RealMatrix& data) {
  if (data.cols() == 0) throw UsageError("entropy needs at least one column");
  const JointModel model(data);
  double hld = 0.0;
  auto local = model.local_entropy(range(0, data.cols()), hld);
  MeasureResult r;
  r.units = Units::nats;
  r.n_observations = local.size();
  r.average = 0.5 * static_cast<double>(data.cols()) * std::log(2.0 * std::numbers::pi * std::numbers::e) + hld;
  r.local = std::move(local);
  return r;
}

MeasureResult mutual_info(const RealMatrix& x, const RealMatrix& y) {
  return cmi_from_blocks(x, y, RealMatrix(x.rows(), 0), 0);
}

MeasureResult conditional_mutual_info(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z) {
  return cmi_from_blocks(x, y, z, 0);
}

MeasureResult transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const EmbeddingSpec& spec) {
  return conditional_transfer_entropy(source, dest, RealMatrix(dest.rows(), 0), spec);
}

MeasureResult conditional_transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond,
                                           const EmbeddingSpec& spec) {
  const auto b = transfer_tuples(source, dest, cond, spec);
  return cmi_from_blocks(b.source, b.target, hstack(b.past, b.conditional), b.offset);
}

MeasureResult active_info_storage(const RealMatrix& series, int k, int tau) {
  const auto b = storage_tuples(series, k, tau);
  return cmi_from_blocks(b.source, b.target, RealMatrix(b.target.rows(), 0), b.offset);
}

NullDistribution analytic_null(std::size_t x_dims, std::size_t y_dims, std::size_t n, double actual) {
  if (n == 0) throw DataError("analytic null needs at least one observation");
  const double dof = static_cast<double>(x_dims * y_dims);
  return chi_squared_null(dof, 1.0 / (2.0 * static_cast<double>(n)), actual, Units::nats);
}

}  // namespace infodyn::gaussian
