#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infodyn/errors.hpp"
#include "infodyn/matrix.hpp"
#include "infodyn/types.hpp"

namespace infodyn {

enum class EmbedRole { dest, source };

namespace detail {
void require_samples(std::size_t have, std::size_t need);
}

/// Delay embedding: row i is {x[n-(dim-1)tau], ..., x[n-tau], x[n]} with
/// n = (dim-1)*tau + i. Output has N - (dim-1)*tau rows.
template <typename T>
Matrix<T> embed(std::span<const T> series, int dim, int tau) {
  if (dim < 1 || tau < 1) throw UsageError("embedding dimension and delay must be >= 1");
  const std::size_t span_len = static_cast<std::size_t>(dim - 1) * static_cast<std::size_t>(tau);
  detail::require_samples(series.size(), span_len + 1);
  const std::size_t n = series.size() - span_len;
  Matrix<T> out(n, static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < n; ++i)
    for (int j = 0; j < dim; ++j) out(i, static_cast<std::size_t>(j)) = series[i + static_cast<std::size_t>(j * tau)];
  return out;
}

template <typename T>
Matrix<T> embed(std::span<const T> series, const EmbeddingSpec& spec, EmbedRole role) {
  return role == EmbedRole::dest ? embed(series, spec.k, spec.tau_k) : embed(series, spec.l, spec.tau_l);
}

/// Embedding of every column of `data`, concatenated column-block-wise, for
/// state vectors ending at time `t`: {x_c[t-(dim-1)tau], ..., x_c[t]} per column c.
template <typename T>
void embedded_state(const Matrix<T>& data, std::size_t t, int dim, int tau, std::vector<T>& out) {
  out.clear();
  for (std::size_t c = 0; c < data.cols(); ++c)
    for (int j = dim - 1; j >= 0; --j) out.push_back(data(t - static_cast<std::size_t>(j * tau), c));
}

/// Observation tuples for one trial, before pooling into an ObservationStore.
template <typename T>
struct TupleBlocks {
  Matrix<T> source;
  Matrix<T> target;
  Matrix<T> past;
  Matrix<T> conditional;
  std::size_t offset = 0;
};

/// Transfer-entropy tuples for t in [offset, N): target x[t], past x^{(k)}
/// ending at t-1, source y^{(l)} ending at t-u, conditional z[t-1]. Source,
/// destination and conditional may each be multivariate (column blocks).
template <typename T>
TupleBlocks<T> transfer_tuples(const Matrix<T>& source, const Matrix<T>& dest, const Matrix<T>& cond,
                               const EmbeddingSpec& spec) {
  spec.validate();
  const std::size_t n = dest.rows();
  if (source.rows() != n || (cond.cols() > 0 && cond.rows() != n))
    throw DataError("source, destination and conditional series must have equal lengths");
  const std::size_t offset = spec.offset();
  detail::require_samples(n, offset + 1);
  TupleBlocks<T> b;
  b.offset = offset;
  const std::size_t rows = n - offset;
  b.source = Matrix<T>(rows, source.cols() * static_cast<std::size_t>(spec.l));
  b.target = Matrix<T>(rows, dest.cols());
  b.past = Matrix<T>(rows, dest.cols() * static_cast<std::size_t>(spec.k));
  b.conditional = Matrix<T>(rows, cond.cols());
  std::vector<T> buf;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = offset + i;
    for (std::size_t c = 0; c < dest.cols(); ++c) b.target(i, c) = dest(t, c);
    embedded_state(dest, t - 1, spec.k, spec.tau_k, buf);
    std::copy(buf.begin(), buf.end(), b.past.row(i).begin());
    if (source.cols() > 0) {
      embedded_state(source, t - static_cast<std::size_t>(spec.u), spec.l, spec.tau_l, buf);
      std::copy(buf.begin(), buf.end(), b.source.row(i).begin());
    }
    for (std::size_t c = 0; c < cond.cols(); ++c) b.conditional(i, c) = cond(t - 1, c);
  }
  return b;
}

/// Storage tuples (past state, next value) for t in [offset, N), offset = (k-1)tau + 1.
/// The past goes in `source`, the next value in `target`.
template <typename T>
TupleBlocks<T> storage_tuples(const Matrix<T>& series, int k, int tau) {
  EmbeddingSpec spec;
  spec.k = k;
  spec.tau_k = tau;
  const Matrix<T> none(series.rows(), 0);
  TupleBlocks<T> b = transfer_tuples(none, series, none, spec);
  b.source = std::move(b.past);
  b.past = Matrix<T>(b.target.rows(), 0);
  return b;
}

/// Predictive-information tuples: past block ending at t-1 (k, tau) in `source`
/// and future block {x[t], x[t+tau], ..., x[t+(k-1)tau]} in `target`.
template <typename T>
TupleBlocks<T> predictive_tuples(const Matrix<T>& series, int k, int tau) {
  if (k < 1 || tau < 1) throw UsageError("embedding dimension and delay must be >= 1");
  const std::size_t span_len = static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(tau);
  const std::size_t offset = span_len + 1;
  detail::require_samples(series.rows(), offset + span_len + 1);
  const std::size_t rows = series.rows() - offset - span_len;
  TupleBlocks<T> b;
  b.offset = offset;
  b.source = Matrix<T>(rows, series.cols() * static_cast<std::size_t>(k));
  b.target = Matrix<T>(rows, series.cols() * static_cast<std::size_t>(k));
  b.past = Matrix<T>(rows, 0);
  b.conditional = Matrix<T>(rows, 0);
  std::vector<T> buf;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = offset + i;
    embedded_state(series, t - 1, k, tau, buf);
    std::copy(buf.begin(), buf.end(), b.source.row(i).begin());
    embedded_state(series, t + span_len, k, tau, buf);
    std::copy(buf.begin(), buf.end(), b.target.row(i).begin());
  }
  return b;
}

/// Pooled observation tuples (source state, target, past state, conditional)
/// gathered from one or more trials. Tuples never span trials. Once finalized
/// the store is read-only.
template <typename T>
class ObservationStore {
 public:
  void add(const TupleBlocks<T>& blocks) {
    if (finalized_) throw UsageError("observations already finalized; call initialise() first");
    const std::size_t begin = source_.rows();
    if (begin > 0 || !trials_.empty()) {
      if (blocks.source.cols() != source_.cols() || blocks.target.cols() != target_.cols() ||
          blocks.past.cols() != past_.cols() || blocks.conditional.cols() != conditional_.cols())
        throw DataError("observation dimensions differ between trials");
    }
    source_.append_rows(blocks.source);
    target_.append_rows(blocks.target);
    past_.append_rows(blocks.past);
    conditional_.append_rows(blocks.conditional);
    trials_.emplace_back(begin, source_.rows());
    offsets_.push_back(blocks.offset);
  }

  void finalize() {
    if (source_.rows() == 0 && target_.rows() == 0) throw UsageError("no observations were added");
    finalized_ = true;
  }

  bool finalized() const noexcept { return finalized_; }
  std::size_t size() const noexcept { return std::max(source_.rows(), target_.rows()); }

  const Matrix<T>& source() const noexcept { return source_; }
  const Matrix<T>& target() const noexcept { return target_; }
  const Matrix<T>& past() const noexcept { return past_; }
  const Matrix<T>& conditional() const noexcept { return conditional_; }
  /// Past state and conditional side by side: the full conditioning variable.
  Matrix<T> given() const { return hstack(past_, conditional_); }

  const std::vector<std::pair<std::size_t, std::size_t>>& trials() const noexcept { return trials_; }
  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

 private:
  Matrix<T> source_, target_, past_, conditional_;
  std::vector<std::pair<std::size_t, std::size_t>> trials_;
  std::vector<std::size_t> offsets_;
  bool finalized_ = false;
};

}  // namespace infodyn
