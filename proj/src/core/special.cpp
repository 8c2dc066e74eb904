#include "infodyn/special.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace infodyn {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("digamma: argument must be positive and finite");
  // Shift up to x >= 10 where the asymptotic series is accurate; the largest
  // term 1/x is subtracted last to keep tiny arguments precise.
  double shift = 0.0;
  double z = x;
  if (z < 10.0) {
    z += 1.0;
    while (z < 10.0) {
      shift += 1.0 / z;
      z += 1.0;
    }
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
  double result = std::log(z) - 0.5 * inv - series - shift;
  if (x < 10.0) result -= 1.0 / x;
  return result;
}

double chi_squared_upper_tail(double x, double dof) {
  if (!(dof > 0.0)) throw std::domain_error("chi-square degrees of freedom must be positive");
  if (!(x > 0.0)) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace infodyn
