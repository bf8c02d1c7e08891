#pragma once

#include <algorithm>
#include <ostream>

namespace ifsot {

/// Closed interval [lo, hi] of reals. Used both for cylinder sets on the line
/// and for certified value enclosures.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  static Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool intersects(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
  Interval widened(double radius) const { return {lo - radius, hi + radius}; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << '[' << iv.lo << ", " << iv.hi << ']';
  }
};

/// Certified enclosure of a real value.
using ValueInterval = Interval;

}  // namespace ifsot
