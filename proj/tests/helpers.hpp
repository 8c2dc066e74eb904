#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "infodyn/matrix.hpp"

namespace testutil {

inline std::vector<int> random_symbols(std::mt19937_64& rng, std::size_t n, int m) {
  std::uniform_int_distribution<int> d(0, m - 1);
  std::vector<int> out(n);
  for (auto& v : out) v = d(rng);
  return out;
}

inline std::vector<double> gaussian_noise(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
  std::normal_distribution<double> d(0.0, sd);
  std::vector<double> out(n);
  for (auto& v : out) v = d(rng);
  return out;
}

inline infodyn::RealMatrix column(const std::vector<double>& v) { return infodyn::RealMatrix::column(v); }

/// Two columns with correlation rho drawn from a standard bivariate normal.
inline infodyn::RealMatrix correlated_pair(std::mt19937_64& rng, std::size_t n, double rho) {
  std::normal_distribution<double> d(0.0, 1.0);
  infodyn::RealMatrix out(n, 2);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d(rng), b = d(rng);
    out(i, 0) = a;
    out(i, 1) = rho * a + c * b;
  }
  return out;
}

/// Asymptotic Kolmogorov distribution survival function Q(lambda).
inline double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

/// One-sample Kolmogorov-Smirnov test; returns the p-value (Stephens' finite-n correction).
inline double ks_pvalue(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  const double sq = std::sqrt(n);
  return kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}

}  // namespace testutil
