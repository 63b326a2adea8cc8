#ifndef SEBOOST_SUBSPACE_HPP
#define SEBOOST_SUBSPACE_HPP

#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seboost/core.hpp"

namespace seboost {

/// Ring buffer of at most `capacity` persistent step directions, oldest first.
template <typename Scalar = double>
class DirectionBuffer {
 public:
  explicit DirectionBuffer(int capacity) : capacity_(capacity) {
    if (capacity < 1) {
      throw std::invalid_argument("direction buffer capacity must be >= 1");
    }
  }

  int capacity() const { return capacity_; }
  Index size() const { return static_cast<Index>(dirs_.size()); }
  bool empty() const { return dirs_.empty(); }

  const Vec<Scalar>& operator[](Index i) const { return dirs_[i]; }
  const Vec<Scalar>& newest() const {
    if (dirs_.empty()) throw std::logic_error("direction buffer is empty");
    return dirs_.back();
  }

  /// Append as newest, evicting the oldest entry once over capacity.
  /// A zero-norm direction is skipped (it would span nothing); returns
  /// whether the direction was stored.
  bool push(const Vec<Scalar>& dir) {
    if (dir.norm() == Scalar(0)) return false;
    dirs_.push_back(dir);
    if (static_cast<int>(dirs_.size()) > capacity_) dirs_.pop_front();
    return true;
  }

  /// Overwrite the newest entry; buffer must be non-empty.
  void replace_newest(const Vec<Scalar>& dir) {
    if (dirs_.empty()) {
      throw std::logic_error("replace_newest on empty direction buffer");
    }
    dirs_.back() = dir;
  }

 private:
  int capacity_;
  std::deque<Vec<Scalar>> dirs_;
};

/// Stored past iterate, refreshed every `period` boosting steps.
template <typename Scalar = double>
struct Anchor {
  Vec<Scalar> point;
  int period = 1;
};

/// Reset every anchor whose period divides the boost index k (1-based).
template <typename Scalar>
void update_anchors(std::vector<Anchor<Scalar>>& anchors, int boost_index,
                    const Vec<Scalar>& x) {
  if (boost_index < 1) throw std::invalid_argument("boost index must be >= 1");
  for (auto& anchor : anchors) {
    if (boost_index % anchor.period == 0) anchor.point = x;
  }
}

/// Exponentially weighted sum of realized outer steps, m <- mu*m + p.
template <typename Scalar = double>
struct MomentumDirection {
  Vec<Scalar> m;
  Scalar mu = Scalar(0.9);
};

template <typename Scalar>
void update_momentum(MomentumDirection<Scalar>& md, const Vec<Scalar>& step) {
  md.m = md.mu * md.m + step;
}

enum class ColumnTag { kHistory, kCumulative, kAnchor, kMomentum, kGradient };

/// Immutable snapshot of the span for one boosting step. Buffer columns keep
/// their raw step magnitudes; anchor/momentum/gradient columns are unit norm.
template <typename Scalar = double>
struct SubspaceMatrix {
  Mat<Scalar> columns;           // n x d
  std::vector<ColumnTag> tags;   // one per column

  Index dim() const { return columns.cols(); }
  bool empty() const { return columns.cols() == 0; }
};

/// Gather the subspace for one boosting step: all buffer directions in order
/// (newest tagged cumulative), then per-anchor normalized (x - a_i), then the
/// normalized momentum and current-gradient enrichments when supplied.
/// Transient columns below `degenerate_norm` are dropped.
template <typename Scalar>
SubspaceMatrix<Scalar> assemble(
    const DirectionBuffer<Scalar>& buffer, const Vec<Scalar>& x,
    const std::vector<Anchor<Scalar>>& anchors,
    const MomentumDirection<Scalar>* momentum = nullptr,
    const Vec<Scalar>* current_grad = nullptr,
    Scalar degenerate_norm = Scalar(1e-12)) {
  std::vector<Vec<Scalar>> cols;
  std::vector<ColumnTag> tags;
  cols.reserve(static_cast<std::size_t>(buffer.size()) + anchors.size() + 2);

  for (Index i = 0; i < buffer.size(); ++i) {
    cols.push_back(buffer[i]);
    tags.push_back(i + 1 == buffer.size() ? ColumnTag::kCumulative
                                          : ColumnTag::kHistory);
  }
  auto push_unit = [&](const Vec<Scalar>& dir, ColumnTag tag) {
    const Scalar norm = dir.norm();
    if (!(norm > degenerate_norm)) return;
    cols.push_back(dir / norm);
    tags.push_back(tag);
  };
  for (const auto& anchor : anchors) {
    push_unit(x - anchor.point, ColumnTag::kAnchor);
  }
  if (momentum != nullptr) push_unit(momentum->m, ColumnTag::kMomentum);
  if (current_grad != nullptr) push_unit(*current_grad, ColumnTag::kGradient);

  SubspaceMatrix<Scalar> out;
  out.tags = std::move(tags);
  out.columns.resize(x.size(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.columns.col(static_cast<Index>(j)) = cols[j];
  }
  return out;
}

}  // namespace seboost

#endif  // SEBOOST_SUBSPACE_HPP
