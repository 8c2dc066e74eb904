#pragma once

#include <cstdint>
#include <span>

#include "infodyn/matrix.hpp"
#include "infodyn/null_distribution.hpp"
#include "infodyn/types.hpp"

// Plug-in estimators over symbol counts. All results are in bits. No bias
// correction is applied. Local values are exact plug-in log ratios and the
// average is their mean.
namespace infodyn::discrete {

MeasureResult entropy(std::span<const int> series, const Alphabet& alphabet);

MeasureResult mutual_info(std::span<const int> x, std::span<const int> y, const Alphabet& mx, const Alphabet& my);

/// I(X;Y|Z). `z` may have several columns (a joint conditional) or none.
MeasureResult conditional_mutual_info(std::span<const int> x, std::span<const int> y, const SymbolMatrix& z,
                                      const Alphabet& mx, const Alphabet& my, const Alphabet& mz);

/// Sum of column entropies minus the joint entropy. Needs at least two columns.
MeasureResult multi_info(const SymbolMatrix& rows, const Alphabet& alphabet);

/// H(X_{n+1} | X_n^{(k)}).
MeasureResult entropy_rate(std::span<const int> series, const Alphabet& alphabet, int k, int tau = 1);

/// I(X_n^{(k)}; X_{n+1}).
MeasureResult active_info_storage(std::span<const int> series, const Alphabet& alphabet, int k, int tau = 1);

/// I(X_n^{(k)}; X_{n+1}^{(k+)}) between consecutive length-k blocks.
MeasureResult predictive_info(std::span<const int> series, const Alphabet& alphabet, int k, int tau = 1);

/// I(Y_{n+1-u}^{(l)}; X_{n+1} | X_n^{(k)}). Source and destination share the alphabet.
MeasureResult transfer_entropy(std::span<const int> source, std::span<const int> dest, const Alphabet& alphabet,
                               const EmbeddingSpec& spec);

/// Transfer entropy additionally conditioned on every column of `cond` at time n.
MeasureResult conditional_transfer_entropy(std::span<const int> source, std::span<const int> dest,
                                           const SymbolMatrix& cond, const Alphabet& alphabet,
                                           const EmbeddingSpec& spec);

/// Transfer entropy from the joint state of all source columns.
MeasureResult collective_transfer_entropy(const SymbolMatrix& sources, std::span<const int> dest,
                                          const Alphabet& alphabet, const EmbeddingSpec& spec);

/// Active information storage plus the apparent transfer entropy from each
/// source column, all evaluated over the same observation window.
MeasureResult separable_info(std::span<const int> dest, const SymbolMatrix& sources, const Alphabet& alphabet,
                             const EmbeddingSpec& spec);

enum class NullMeasure { mi, cond_mi, te };

/// Degrees of freedom of the asymptotic chi-square null, X being the
/// variable predicted (the destination for TE):
///   mi:      (Mx-1)(My-1)
///   cond_mi: (Mx-1)(My-1)Mz
///   te:      (Mx-1)(My^l-1)Mx^k
double analytic_dof(NullMeasure measure, std::int64_t mx, std::int64_t my, std::int64_t mz, const EmbeddingSpec& spec);

/// Analytic null in bits: chi^2_dof / (2 N ln 2), with the upper-tail p-value of `actual`.
NullDistribution analytic_null(NullMeasure measure, std::int64_t mx, std::int64_t my, std::int64_t mz,
                               const EmbeddingSpec& spec, std::size_t n, double actual);

/// Validates symbols against the alphabet (DataError "symbol out of alphabet").
void check_symbols(std::span<const int> values, const Alphabet& alphabet);

}  // namespace infodyn::discrete
