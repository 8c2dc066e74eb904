#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "infodyn/ksg/neighbours.hpp"
#include "infodyn/matrix.hpp"
#include "infodyn/types.hpp"

// Kraskov-Stoegbauer-Grassberger nearest-neighbour estimators and the
// Kozachenko-Leonenko entropy. Results are in nats; the average is the mean
// of the local terms. All distances use the max-norm over every coordinate
// of the space concerned.
namespace infodyn::ksg {

struct KsgConfig {
  int k = 4;
  /// 1: shared joint-space radius, strict marginal counts.
  /// 2: per-variable radii from the K neighbours, inclusive counts.
  int algorithm = 1;
  /// Uniform jitter in [-a, a] with a = noise_scale * (column std) is added to
  /// every column before neighbour search; 0 disables it.
  double noise_scale = 1e-8;
  std::uint64_t seed = 0;
  /// Rescale each input column to zero mean and unit variance first.
  bool normalise = true;
  SearchMethod method = SearchMethod::automatic;
};

/// Adds the configured jitter to each block in turn, drawing from a single
/// stream seeded by `seed`. Deterministic for a given (blocks, scale, seed).
void add_jitter(std::vector<RealMatrix*> blocks, double noise_scale, std::uint64_t seed);

// Tuple-level estimators on prepared (normalised, jittered) blocks.
MeasureResult conditional_mi_tuples(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z, int k,
                                    int algorithm, SearchMethod method, std::size_t offset = 0);
/// Multi-information between the given variables (each may be multivariate).
MeasureResult multi_info_tuples(const std::vector<RealMatrix>& variables, int k, int algorithm,
                                SearchMethod method);
MeasureResult kl_entropy_tuples(const RealMatrix& data, int k, SearchMethod method);

/// Kozachenko-Leonenko differential entropy -psi(K) + psi(N) + d <ln(2 eps)>.
/// Never normalises the data (entropy is not scale invariant).
MeasureResult kl_entropy(const RealMatrix& data, const KsgConfig& cfg = {});

MeasureResult mutual_info(const RealMatrix& x, const RealMatrix& y, const KsgConfig& cfg = {});

/// A zero-column `z` gives mutual_info.
MeasureResult conditional_mutual_info(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z,
                                      const KsgConfig& cfg = {});

/// Multi-information between the columns of `rows`.
MeasureResult multi_info(const RealMatrix& rows, const KsgConfig& cfg = {});

MeasureResult transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const EmbeddingSpec& spec,
                               const KsgConfig& cfg = {});

MeasureResult conditional_transfer_entropy(const RealMatrix& source, const RealMatrix& dest, const RealMatrix& cond,
                                           const EmbeddingSpec& spec, const KsgConfig& cfg = {});

MeasureResult active_info_storage(const RealMatrix& series, int k_history, int tau = 1, const KsgConfig& cfg = {});

MeasureResult predictive_info(const RealMatrix& series, int k_history, int tau = 1, const KsgConfig& cfg = {});

}  // namespace infodyn::ksg
