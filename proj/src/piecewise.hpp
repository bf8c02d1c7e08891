#pragma once

// Joint walk over the gap/cell partitions of two staircases.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ifsot/staircase.hpp"

namespace ifsot::detail {

/// Walks [0, 1] as the alternating sequence gap, cell, gap, ..., gap.
class SegmentCursor {
 public:
  explicit SegmentCursor(const StaircaseApprox& s) : cells_(s.cells()) {}

  bool in_cell() const { return in_cell_; }
  double end() const {
    if (in_cell_) return cells_[index_].interval.hi;
    return index_ < cells_.size() ? cells_[index_].interval.lo : 1.0;
  }
  ValueInterval value() const {
    if (in_cell_) {
      const auto& c = cells_[index_];
      return {c.cum_left, c.cum_left + c.mass};
    }
    if (!wide_gap()) {
      // Too narrow to be told apart from rounding: hull of both neighbours.
      const auto& next = cells_[index_];
      return {cells_[index_ - 1].cum_left, next.cum_left + next.mass};
    }
    const double v = index_ < cells_.size() ? cells_[index_].cum_left : 1.0;
    return ValueInterval::point(v);
  }
  /// On a gap whose value is certified.
  bool exact() const { return !in_cell_ && wide_gap(); }
  bool done() const { return !in_cell_ && index_ >= cells_.size(); }
  void advance() {
    if (in_cell_) {
      in_cell_ = false;
      ++index_;
    } else {
      in_cell_ = true;
    }
  }

 private:
  bool wide_gap() const {
    if (index_ == 0 || index_ >= cells_.size()) return true;
    return cells_[index_].interval.lo - cells_[index_ - 1].interval.hi >= 2 * kPositionSlack;
  }

  const std::vector<StaircaseCell>& cells_;
  std::size_t index_ = 0;
  bool in_cell_ = false;
};

struct Piece {
  double lo;
  double hi;
  ValueInterval fa;
  ValueInterval fb;
  bool exact;  // both CDFs constant and certified on the piece
};

/// Calls fn(Piece) for every positive-width piece of the common refinement.
template <class Fn>
void walk_pieces(const StaircaseApprox& a, const StaircaseApprox& b, Fn&& fn) {
  SegmentCursor ca(a);
  SegmentCursor cb(b);
  double x = 0.0;
  while (x < 1.0) {
    while (!ca.done() && ca.end() <= x) ca.advance();
    while (!cb.done() && cb.end() <= x) cb.advance();
    const double next = std::min(ca.end(), cb.end());
    if (next <= x) break;
    fn(Piece{x, next, ca.value(), cb.value(), ca.exact() && cb.exact()});
    x = next;
  }
}

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace ifsot::detail
