#include "ifsot/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "piecewise.hpp"

namespace ifsot {

namespace {

// Depth-first construction in geometric order. Children of a cylinder are
// visited in the order of the level-one images, reversed when the composed
// map is decreasing, so cells come out sorted.
class Builder {
 public:
  Builder(const IFSystem& system, const WeightVector& weights, double resolution, std::size_t max_cells)
      : system_(system), weights_(weights), resolution_(resolution), max_cells_(max_cells) {
    order_.resize(system.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t i, std::size_t j) { return system[i].image().lo < system[j].image().lo; });
    affine_ = system.all_affine();
    for (const auto& m : system.maps()) {
      slope_.push_back(m.coefficient().to_double());
      intercept_.push_back(m.offset().to_double());
    }
  }

  std::vector<StaircaseCell> run() {
    visit(1.0, 0.0, 1, 1.0, 0.0);
    return std::move(cells_);
  }

 private:
  // f_w(x) = a x + b in the affine case; path_ holds w otherwise.
  void visit(double a, double b, int orientation, double mass, double cum_left) {
    // The root is always split, so resolution 1 yields the k level-one cells.
    if (mass <= resolution_ && !path_.empty()) {
      emit(a, b, mass, cum_left);
      return;
    }
    const std::size_t k = system_.size();
    double cum = cum_left;
    for (std::size_t step = 0; step < k; ++step) {
      const std::size_t i = orientation > 0 ? order_[step] : order_[k - 1 - step];
      const double child_mass = mass * weights_[i];
      const int child_orientation = orientation * system_[i].sign();
      path_.push_back(static_cast<std::uint8_t>(i));
      if (affine_) {
        visit(a * slope_[i], a * intercept_[i] + b, child_orientation, child_mass, cum);
      } else {
        visit(0.0, 0.0, child_orientation, child_mass, cum);
      }
      path_.pop_back();
      cum += child_mass;
    }
  }

  double eval_path(double x) const {
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) x = system_[*it].apply(x);
    return x;
  }

  void emit(double a, double b, double mass, double cum_left) {
    if (cells_.size() >= max_cells_) {
      throw ResourceLimit("staircase exceeds " + std::to_string(max_cells_) + " cells");
    }
    Interval iv = affine_ ? Interval::hull(b, a + b) : Interval::hull(eval_path(0.0), eval_path(1.0));
    if (!cells_.empty()) {
      // Touching images can overlap by a rounding error.
      const double prev_hi = cells_.back().interval.hi;
      if (iv.lo < prev_hi) {
        if (prev_hi - iv.lo > 1e-9) throw std::logic_error("staircase cells out of order");
        iv.lo = prev_hi;
        iv.hi = std::max(iv.hi, iv.lo);
      }
    }
    cells_.push_back({iv, mass, cum_left});
  }

  const IFSystem& system_;
  const WeightVector& weights_;
  double resolution_;
  std::size_t max_cells_;
  std::vector<std::size_t> order_;
  bool affine_ = false;
  std::vector<double> slope_;
  std::vector<double> intercept_;
  std::vector<std::uint8_t> path_;
  std::vector<StaircaseCell> cells_;
};

void require_unit(double x) {
  if (!(x >= -kEndpointSlack && x <= 1.0 + kEndpointSlack)) {
    throw std::domain_error("CDF argument outside [0,1]: " + std::to_string(x));
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

StaircaseApprox::StaircaseApprox(IFSystem system, WeightVector weights, std::vector<StaircaseCell> cells,
                                 double resolution)
    : system_(std::move(system)), weights_(std::move(weights)), cells_(std::move(cells)), resolution_(resolution) {
  for (const auto& c : cells_) {
    max_mass_ = std::max(max_mass_, c.mass);
    budget_ += c.mass * c.interval.width();
  }
}

StaircaseApprox build_staircase(const IFSystem& system, const WeightVector& weights, double resolution,
                                std::size_t max_cells) {
  if (!(resolution > 0.0 && resolution <= 1.0)) {
    throw std::invalid_argument("resolution must lie in (0, 1], got " + std::to_string(resolution));
  }
  if (weights.size() != system.size()) throw std::invalid_argument("weight count differs from map count");
  if (!system.validation().disjoint_open_images) {
    throw HypothesisViolation(Condition::disjoint_images, "staircase needs pairwise disjoint open images");
  }
  Builder builder(system, weights, resolution, max_cells);
  return StaircaseApprox(system, weights, builder.run(), resolution);
}

ValueInterval eval_cdf(const StaircaseApprox& staircase, double x) {
  require_unit(x);
  if (x <= 0.0) return ValueInterval::point(0.0);
  if (x >= 1.0) return ValueInterval::point(1.0);
  const auto& cells = staircase.cells();
  // Cells within kPositionSlack of x; intervals are disjoint and sorted.
  const auto first = std::lower_bound(cells.begin(), cells.end(), x - kPositionSlack,
                                      [](const StaircaseCell& c, double v) { return c.interval.hi < v; });
  const auto last = std::upper_bound(cells.begin(), cells.end(), x + kPositionSlack,
                                     [](double v, const StaircaseCell& c) { return v < c.interval.lo; });
  if (first >= last) return ValueInterval::point(first == cells.end() ? 1.0 : first->cum_left);
  const StaircaseCell& back = *(last - 1);
  return {first->cum_left, back.cum_left + back.mass};
}

Rational first_moment_closed(const IFSystem& system, const WeightVector& weights) {
  if (!system.all_affine()) throw HypothesisViolation(Condition::non_affine, "moment formula needs affine maps");
  if (weights.size() != system.size()) throw std::invalid_argument("weight count differs from map count");
  Rational translation;
  Rational contraction;
  for (std::size_t i = 0; i < system.size(); ++i) {
    translation += weights.exact(i) * system[i].offset();
    contraction += weights.exact(i) * system[i].coefficient();
  }
  return translation / (Rational(1) - contraction);
}

double CostDescriptor::operator()(double x) const {
  if (kind_ == Kind::identity) return x;
  return x < threshold_ ? -x : x;
}

Interval CostDescriptor::range(const Interval& cell) const {
  if (kind_ == Kind::identity || cell.lo >= threshold_) return cell;
  if (cell.hi < threshold_) return {-cell.hi, -cell.lo};
  // Straddles the threshold: -x on [lo, t), +x on [t, hi].
  return {-threshold_, std::max(-cell.lo, cell.hi)};
}

ValueInterval integrate_against(const StaircaseApprox& staircase, const CostDescriptor& cost) {
  detail::CompensatedSum lo;
  detail::CompensatedSum hi;
  for (const auto& c : staircase.cells()) {
    const Interval r = cost.range(c.interval);
    lo.add(c.mass * r.lo);
    hi.add(c.mass * r.hi);
  }
  // Cell masses carry a relative rounding error of a few ulps per level.
  constexpr double kRounding = 1e-13;
  return {lo.value() - kRounding, hi.value() + kRounding};
}

Envelope power_law_envelope(double r, double p, double x) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("p must lie in (0,1)");
  if (std::min(p, 1.0 - p) * r < 1.0 - 1e-12) {
    throw HypothesisViolation(Condition::contraction_ratio, "envelope needs min{p,1-p} r >= 1");
  }
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("envelope argument must lie in (0,1]");
  const double e = std::log(1.0 / p) / std::log(r);
  return {std::pow(x / (r - 1.0), e), std::pow(x, e)};
}

EnvelopeCheck check_envelope(const StaircaseApprox& staircase, double r, double p, double tolerance) {
  EnvelopeCheck out;
  const auto& cells = staircase.cells();
  auto check_gap = [&](double a, double b, double v) {
    if (!(b - a >= 2 * kPositionSlack)) return;
    ++out.gaps_checked;
    const double excess =
        std::max(v - power_law_envelope(r, p, std::max(a, 1e-300)).upper, power_law_envelope(r, p, b).lower - v);
    if (excess > tolerance) ++out.violations;
    out.worst_excess = std::max(out.worst_excess, excess);
  };
  double x = 0.0;
  for (const auto& c : cells) {
    check_gap(x, c.interval.lo, c.cum_left);
    x = c.interval.hi;
  }
  check_gap(x, 1.0, 1.0);
  return out;
}

void write_envelope_csv(std::ostream& out, double r, double p, std::size_t n) {
  out << "x,lower,upper\n";
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const Envelope e = power_law_envelope(r, p, x);
    out << format_double(x) << ',' << format_double(e.lower) << ',' << format_double(e.upper) << '\n';
  }
}

double self_affine_check(double r, double p, unsigned n, unsigned samples) {
  if (!(r > 2.0)) throw std::out_of_range("self-affinity check needs r > 2");
  if (!(p > 0.0 && p < 1.0)) throw std::out_of_range("self-affinity check needs p in (0,1)");
  if (n == 0 || samples == 0) return 0.0;

  const IFSystem system = make_flip_system(Rational::from_double(r));
  const std::vector<double> w{p, 1.0 - p};
  const WeightVector weights = WeightVector::from_doubles(w);
  const double pn = std::pow(p, static_cast<double>(n));

  // A gap of the coarse staircase sits between children of a cylinder u of
  // mass > coarse; its image under x -> x/r^n sits between children of 1^n u,
  // of mass > p^n coarse, so the fine staircase resolves it.
  const double coarse = std::min(0.5, 0.5 / samples);
  const StaircaseApprox fine = build_staircase(system, weights, 0.5 * pn * coarse);
  const StaircaseApprox rough = build_staircase(system, weights, coarse);

  const double scale = std::pow(r, static_cast<double>(n));
  // Gaps must stay wider than the position slack after scaling by r^-n.
  std::vector<double> points;
  const auto& cells = rough.cells();
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const double lo = cells[i].interval.hi;
    const double hi = cells[i + 1].interval.lo;
    const double mid = 0.5 * (lo + hi);
    if (hi - lo >= 2 * kPositionSlack * scale && mid >= 1.0 / r) points.push_back(mid);
  }
  const std::size_t stride = std::max<std::size_t>(1, points.size() / samples);

  double defect = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < points.size() && used < samples; i += stride, ++used) {
    const ValueInterval small = eval_cdf(fine, points[i] / scale);
    const ValueInterval big = eval_cdf(fine, points[i]);
    defect = std::max({defect, std::abs(small.hi - pn * big.lo), std::abs(small.lo - pn * big.hi)});
  }
  return defect;
}

PlateauTable plateau_intervals(const Rational& r, const Rational& p, unsigned k_max, bool conjecture_mode) {
  if (!(r > Rational(2))) throw HypothesisViolation(Condition::contraction_ratio, "plateaus need r > 2");
  if (p.sign() <= 0 || p >= Rational(1)) throw std::domain_error("p must lie in (0,1)");
  const BigInt den = p.denominator();
  const bool proven = p.numerator() == 1 && den >= 3 && den % 2 == 1;
  if (!proven && !conjecture_mode) {
    throw HypothesisViolation(Condition::weight_family, "plateaus are established for p = 1/(2m+1) only, got " + p.str());
  }

  const Rational q = Rational(1) / r;
  const Rational q2 = q * q;
  const Rational pq = p * (Rational(1) - p);
  Rational low = Rational(1) - q + q2;  // seeds a_k for even k
  Rational high = Rational(1) - q2;     // seeds a_k for odd k
  Rational value = Rational(1) - pq;

  PlateauTable table;
  table.verified = proven;
  table.limit = Rational(1) / (Rational(1) + q2);
  for (unsigned k = 0; k <= k_max; ++k) {
    // S reverses order on the first coordinate, so the seeds swap roles.
    if (k % 2 == 0) {
      table.rows.push_back({low, high, value});
    } else {
      table.rows.push_back({high, low, value});
    }
    low = Rational(1) - q2 * low;
    high = Rational(1) - q2 * high;
    value = Rational(1) - pq * value;
  }
  return table;
}

std::string_view to_string(SignClass sign) {
  switch (sign) {
    case SignClass::non_negative: return "non_negative";
    case SignClass::non_positive: return "non_positive";
    case SignClass::mixed: return "mixed";
    case SignClass::undetermined: return "undetermined";
  }
  return "unknown";
}

SignReport cdf_difference_sign(const StaircaseApprox& a, const StaircaseApprox& b) {
  constexpr double kZero = 1e-12;
  SignReport report;
  bool have_gap = false;
  detail::walk_pieces(a, b, [&](const detail::Piece& piece) {
    if (piece.exact) {
      const double d = piece.fa.lo - piece.fb.lo;
      if (!have_gap || d > report.max_difference) {
        report.max_difference = d;
        report.argmax = piece.lo;
      }
      if (!have_gap || d < report.min_difference) {
        report.min_difference = d;
        report.argmin = piece.lo;
      }
      have_gap = true;
      ++report.gap_pieces;
      return;
    }
    const double lo = piece.fa.lo - piece.fb.hi;
    const double hi = piece.fa.hi - piece.fb.lo;
    if (lo < 0.0 && hi > 0.0) {
      auto& regions = report.undetermined_regions;
      if (!regions.empty() && regions.back().hi == piece.lo) {
        regions.back().hi = piece.hi;
      } else {
        regions.push_back({piece.lo, piece.hi});
      }
    }
  });

  const bool positive = report.max_difference > kZero;
  const bool negative = report.min_difference < -kZero;
  const bool same_measure = a.system() == b.system() && a.weights() == b.weights();
  if (positive && negative) {
    report.sign = SignClass::mixed;
  } else if (positive) {
    report.sign = SignClass::non_negative;
  } else if (negative) {
    report.sign = SignClass::non_positive;
  } else if (same_measure) {
    report.sign = SignClass::non_negative;
  } else {
    report.sign = SignClass::undetermined;
  }
  return report;
}

void write_staircase_csv(std::ostream& out, const StaircaseApprox& staircase) {
  out << "x_left,x_right,kind,value,mass\n";
  double x = 0.0;
  for (const auto& c : staircase.cells()) {
    if (c.interval.lo > x) {
      out << format_double(x) << ',' << format_double(c.interval.lo) << ",gap," << format_double(c.cum_left) << ",0\n";
    }
    out << format_double(c.interval.lo) << ',' << format_double(c.interval.hi) << ",cell," << format_double(c.cum_left)
        << ',' << format_double(c.mass) << '\n';
    x = c.interval.hi;
  }
  if (x < 1.0) out << format_double(x) << ",1,gap,1,0\n";
}

}  // namespace ifsot
