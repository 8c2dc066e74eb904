#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "infodyn/types.hpp"

namespace infodyn {

enum class NullMethod { permutation, rotation, analytic };

std::string_view to_string(NullMethod method);

/// Distribution of a measure under the null hypothesis of no (directed)
/// relationship, and where the actual measurement falls in it.
struct NullDistribution {
  std::vector<double> surrogates;  // empty for analytic nulls
  double actual = 0.0;
  double p_value = 1.0;
  double mean = 0.0;
  double std = 0.0;
  double t_score = 0.0;
  NullMethod method = NullMethod::permutation;
  std::size_t n_surrogates = 0;
  /// Number of surrogates >= actual; p_value = count_at_least / n_surrogates.
  std::size_t count_at_least = 0;
  std::uint64_t seed = 0;
  double degrees_of_freedom = 0.0;  // analytic only
  Units units = Units::bits;
};

/// Null where the measure is distributed as chi^2_dof * scale.
NullDistribution chi_squared_null(double dof, double scale, double actual, Units units);

/// Empirical null from a surrogate population (>=-count p-value, no +1 correction).
NullDistribution empirical_null(std::vector<double> surrogates, double actual, NullMethod method,
                                std::uint64_t seed, Units units);

}  // namespace infodyn
