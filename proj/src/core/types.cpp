#include "infodyn/types.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "infodyn/errors.hpp"

namespace infodyn {

std::string_view to_string(Units units) { return units == Units::bits ? "bits" : "nats"; }

std::vector<double> MeasureResult::aligned_local() const {
  std::vector<double> out(offset, 0.0);
  out.insert(out.end(), local.begin(), local.end());
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

MeasureResult result_from_locals(std::vector<double> local, Units units, std::size_t offset) {
  MeasureResult r;
  r.average = mean(local);
  r.units = units;
  r.n_observations = local.size();
  r.offset = offset;
  r.local = std::move(local);
  return r;
}

Alphabet::Alphabet(std::int64_t size) : size_(size) {
  if (size < 2) throw UsageError("alphabet size must be >= 2, got " + std::to_string(size));
}

std::int64_t Alphabet::joint_size(std::size_t variables) const {
  std::int64_t out = 1;
  for (std::size_t i = 0; i < variables; ++i) {
    if (out > std::numeric_limits<std::int64_t>::max() / size_)
      throw DataError("joint alphabet M^" + std::to_string(variables) + " overflows 64 bits");
    out *= size_;
  }
  return out;
}

void EmbeddingSpec::validate() const {
  if (k < 1 || tau_k < 1 || l < 1 || tau_l < 1 || u < 1)
    throw UsageError("embedding parameters k, tau_k, l, tau_l and u must all be >= 1");
}

std::size_t EmbeddingSpec::offset() const {
  const auto dest = static_cast<std::size_t>((k - 1) * tau_k + 1);
  const auto src = static_cast<std::size_t>((l - 1) * tau_l + u);
  return std::max(dest, src);
}

}  // namespace infodyn
