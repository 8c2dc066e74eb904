#include "infodyn/null_distribution.hpp"

#include <cmath>

#include "infodyn/discretise.hpp"
#include "infodyn/special.hpp"

namespace infodyn {

std::string_view to_string(NullMethod method) {
  switch (method) {
    case NullMethod::permutation:
      return "permutation";
    case NullMethod::rotation:
      return "rotation";
    case NullMethod::analytic:
      return "analytic";
  }
  return "unknown";
}

NullDistribution chi_squared_null(double dof, double scale, double actual, Units units) {
  NullDistribution d;
  d.method = NullMethod::analytic;
  d.actual = actual;
  d.degrees_of_freedom = dof;
  d.mean = dof * scale;
  d.std = std::sqrt(2.0 * dof) * scale;
  d.t_score = d.std > 0.0 ? (actual - d.mean) / d.std : 0.0;
  d.p_value = chi_squared_upper_tail(actual / scale, dof);
  d.units = units;
  return d;
}

NullDistribution empirical_null(std::vector<double> surrogates, double actual, NullMethod method,
                                std::uint64_t seed, Units units) {
  NullDistribution d;
  d.method = method;
  d.actual = actual;
  d.seed = seed;
  d.units = units;
  d.n_surrogates = surrogates.size();
  for (double s : surrogates)
    if (s >= actual) ++d.count_at_least;
  d.p_value = d.n_surrogates == 0 ? 1.0 : static_cast<double>(d.count_at_least) / static_cast<double>(d.n_surrogates);
  d.mean = mean(surrogates);
  d.std = sample_std(surrogates);
  d.t_score = d.std > 0.0 ? (actual - d.mean) / d.std : 0.0;
  d.surrogates = std::move(surrogates);
  return d;
}

}  // namespace infodyn
