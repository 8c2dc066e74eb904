#include "infodyn/discrete/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "infodyn/discrete/plugin.hpp"
#include "infodyn/embedding.hpp"
#include "infodyn/errors.hpp"

namespace infodyn::discrete {

namespace {

SymbolMatrix as_column(std::span<const int> values) {
  return SymbolMatrix::column(std::vector<int>(values.begin(), values.end()));
}

void check_matrix(const SymbolMatrix& m, const Alphabet& alphabet) { check_symbols(m.data(), alphabet); }

void require_equal_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw DataError("series lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

MeasureResult from_locals(std::vector<double> local, std::size_t offset) {
  return result_from_locals(std::move(local), Units::bits, offset);
}

std::vector<double> te_locals(const TupleBlocks<int>& b) {
  const StateIds src = joint_states(b.source);
  const StateIds next = joint_states(b.target);
  const StateIds given = joint_states(hstack(b.past, b.conditional));
  return local_conditional_mutual_info(src, next, given);
}

}  // namespace

void check_symbols(std::span<const int> values, const Alphabet& alphabet) {
  for (int v : values)
    if (v < 0 || v >= alphabet.size())
      throw DataError("symbol out of alphabet: " + std::to_string(v) + " not in [0, " +
                      std::to_string(alphabet.size()) + ")");
}

MeasureResult entropy(std::span<const int> series, const Alphabet& alphabet) {
  check_symbols(series, alphabet);
  return from_locals(local_entropy(joint_states(as_column(series))), 0);
}

MeasureResult mutual_info(std::span<const int> x, std::span<const int> y, const Alphabet& mx, const Alphabet& my) {
  require_equal_lengths(x.size(), y.size());
  check_symbols(x, mx);
  check_symbols(y, my);
  const StateIds xs = joint_states(as_column(x));
  const StateIds ys = joint_states(as_column(y));
  return from_locals(local_conditional_mutual_info(xs, ys, constant_states(x.size())), 0);
}

MeasureResult conditional_mutual_info(std::span<const int> x, std::span<const int> y, const SymbolMatrix& z,
                                      const Alphabet& mx, const Alphabet& my, const Alphabet& mz) {
  require_equal_lengths(x.size(), y.size());
  if (z.cols() > 0) require_equal_lengths(x.size(), z.rows());
  check_symbols(x, mx);
  check_symbols(y, my);
  check_matrix(z, mz);
  const StateIds zs = z.cols() > 0 ? joint_states(z) : constant_states(x.size());
  return from_locals(local_conditional_mutual_info(joint_states(as_column(x)), joint_states(as_column(y)), zs), 0);
}

MeasureResult multi_info(const SymbolMatrix& rows, const Alphabet& alphabet) {
  if (rows.cols() < 2) throw UsageError("multi-information needs at least two variables");
  check_matrix(rows, alphabet);
  std::vector<double> local(rows.rows(), 0.0);
  for (std::size_t c = 0; c < rows.cols(); ++c) {
    const auto h = local_entropy(joint_states(SymbolMatrix::column(rows.column_values(c))));
    for (std::size_t i = 0; i < local.size(); ++i) local[i] += h[i];
  }
  const auto joint = local_entropy(joint_states(rows));
  for (std::size_t i = 0; i < local.size(); ++i) local[i] -= joint[i];
  return from_locals(std::move(local), 0);
}

MeasureResult entropy_rate(std::span<const int> series, const Alphabet& alphabet, int k, int tau) {
  check_symbols(series, alphabet);
  const auto b = storage_tuples(as_column(series), k, tau);
  return from_locals(local_conditional_entropy(joint_states(b.target), joint_states(b.source)), b.offset);
}

MeasureResult active_info_storage(std::span<const int> series, const Alphabet& alphabet, int k, int tau) {
  check_symbols(series, alphabet);
  const auto b = storage_tuples(as_column(series), k, tau);
  return from_locals(
      local_conditional_mutual_info(joint_states(b.source), joint_states(b.target), constant_states(b.target.rows())),
      b.offset);
}

MeasureResult predictive_info(std::span<const int> series, const Alphabet& alphabet, int k, int tau) {
  check_symbols(series, alphabet);
  const auto b = predictive_tuples(as_column(series), k, tau);
  return from_locals(
      local_conditional_mutual_info(joint_states(b.source), joint_states(b.target), constant_states(b.target.rows())),
      b.offset);
}

MeasureResult transfer_entropy(std::span<const int> source, std::span<const int> dest, const Alphabet& alphabet,
                               const EmbeddingSpec& spec) {
  return conditional_transfer_entropy(source, dest, SymbolMatrix(dest.size(), 0), alphabet, spec);
}

MeasureResult conditional_transfer_entropy(std::span<const int> source, std::span<const int> dest,
                                           const SymbolMatrix& cond, const Alphabet& alphabet,
                                           const EmbeddingSpec& spec) {
  require_equal_lengths(source.size(), dest.size());
  check_symbols(source, alphabet);
  check_symbols(dest, alphabet);
  check_matrix(cond, alphabet);
  const auto b = transfer_tuples(as_column(source), as_column(dest), cond, spec);
  return from_locals(te_locals(b), b.offset);
}

MeasureResult collective_transfer_entropy(const SymbolMatrix& sources, std::span<const int> dest,
                                          const Alphabet& alphabet, const EmbeddingSpec& spec) {
  require_equal_lengths(sources.rows(), dest.size());
  check_matrix(sources, alphabet);
  check_symbols(dest, alphabet);
  const auto b = transfer_tuples(sources, as_column(dest), SymbolMatrix(dest.size(), 0), spec);
  return from_locals(te_locals(b), b.offset);
}

MeasureResult separable_info(std::span<const int> dest, const SymbolMatrix& sources, const Alphabet& alphabet,
                             const EmbeddingSpec& spec) {
  check_symbols(dest, alphabet);
  if (sources.cols() == 0) return active_info_storage(dest, alphabet, spec.k, spec.tau_k);
  require_equal_lengths(sources.rows(), dest.size());
  check_matrix(sources, alphabet);
  const auto b = transfer_tuples(sources, as_column(dest), SymbolMatrix(dest.size(), 0), spec);
  const StateIds past = joint_states(b.past);
  const StateIds next = joint_states(b.target);
  std::vector<double> local = local_conditional_mutual_info(past, next, constant_states(next.size()));
  const auto l = static_cast<std::size_t>(spec.l);
  for (std::size_t s = 0; s < sources.cols(); ++s) {
    std::vector<std::size_t> cols(l);
    for (std::size_t j = 0; j < l; ++j) cols[j] = s * l + j;
    const auto te = local_conditional_mutual_info(joint_states(b.source.select_columns(cols)), next, past);
    for (std::size_t i = 0; i < local.size(); ++i) local[i] += te[i];
  }
  return from_locals(std::move(local), b.offset);
}

double analytic_dof(NullMeasure measure, std::int64_t mx, std::int64_t my, std::int64_t mz, const EmbeddingSpec& spec) {
  const auto x = static_cast<double>(mx);
  const auto y = static_cast<double>(my);
  switch (measure) {
    case NullMeasure::mi:
      return (x - 1.0) * (y - 1.0);
    case NullMeasure::cond_mi:
      return (x - 1.0) * (y - 1.0) * static_cast<double>(mz);
    case NullMeasure::te:
      return (x - 1.0) * (std::pow(y, spec.l) - 1.0) * std::pow(x, spec.k);
  }
  throw UsageError("analytic null unavailable");
}

NullDistribution analytic_null(NullMeasure measure, std::int64_t mx, std::int64_t my, std::int64_t mz,
                               const EmbeddingSpec& spec, std::size_t n, double actual) {
  if (n == 0) throw DataError("analytic null needs at least one observation");
  const double dof = analytic_dof(measure, mx, my, mz, spec);
  const double scale = 1.0 / (2.0 * static_cast<double>(n) * std::numbers::ln2);
  return chi_squared_null(dof, scale, actual, Units::bits);
}

}  // namespace infodyn::discrete
