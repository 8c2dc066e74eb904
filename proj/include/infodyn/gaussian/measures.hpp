#pragma once

#include <cstddef>

#include "infodyn/matrix.hpp"
#include "infodyn/null_distribution.hpp"
#include "infodyn/types.hpp"

// Linear-Gaussian model estimators. Results are in nats. The model is the
// sample mean and the sample covariance (N-1 divisor). Local values are
// -ln p(x_n) under that model, so for mutual-information type measures the
// mean of the locals equals the determinant form exactly (the quadratic-form
// terms cancel). For entropy the mean of the locals is the determinant form
// minus d/(2N).
namespace infodyn::gaussian {

/// ½ ln((2πe)^d |Ω|). Needs N > d and a non-singular covariance.
MeasureResult entropy(const RealMatrix& data);

/// I(X;Y) = H(X) + H(Y) - H(X,Y).
MeasureResult mutual_info(const RealMatrix& x, const RealMatrix& y);

/// I(X;Y|Z) = H(X,Z) + H(Y,Z) - H(Z) - H(X,Y,Z). A zero-column `z` gives mutual_info.
MeasureResult conditional_mutual_info(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z);

/// Transfer entropy over the embedded tuples of `spec`; columns of `source`
/// and `dest` may be multivariate.
MeasureResult transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const EmbeddingSpec& spec);

/// Transfer entropy additionally conditioned on `cond` at time n.
MeasureResult conditional_transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond,
                                           const EmbeddingSpec& spec);

MeasureResult active_info_storage(const RealMatrix& series, int k, int tau = 1);

/// ½ ln(|Ω|) computed by Cholesky, throwing DataError "degenerate covariance"
/// when a pivot falls below 1e-12 times the largest diagonal entry.
double half_log_det(const RealMatrix& covariance);

/// Sample covariance with the N-1 divisor.
RealMatrix covariance(const RealMatrix& data);

/// Analytic null in nats: chi^2_dof / 2N with dof = x_dims * y_dims
/// (for TE, x_dims is the source state width l*|Y| and y_dims the destination width).
NullDistribution analytic_null(std::size_t x_dims, std::size_t y_dims, std::size_t n, double actual);

}  // namespace infodyn::gaussian
