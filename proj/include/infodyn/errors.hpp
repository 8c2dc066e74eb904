#pragma once

#include <stdexcept>
#include <string>

namespace infodyn {

/// Invalid configuration: unknown property, malformed value, unsupported
/// measure/estimator combination, or lifecycle misuse.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The supplied data cannot be estimated on: too short, out of alphabet,
/// non-finite, degenerate covariance and the like.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infodyn
