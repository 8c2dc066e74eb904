#pragma once

namespace infodyn {

/// Digamma function psi(x) for x > 0; throws std::domain_error otherwise.
/// Absolute error below 1e-10 for x >= 1e-6.
double digamma(double x);

/// Upper tail P(X >= x) of the chi-square distribution with `dof` degrees of freedom.
double chi_squared_upper_tail(double x, double dof);

}  // namespace infodyn
