#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ifsot/errors.hpp"
#include "ifsot/ifs.hpp"
#include "ifsot/interval.hpp"
#include "ifsot/rational.hpp"

namespace ifsot {

inline constexpr double kDefaultResolution = 1e-6;
inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 22;
/// Bound on the rounding error of computed cell endpoints. A point closer than
/// this to a cell is not treated as lying in a gap.
inline constexpr double kPositionSlack = 1e-14;

/// One cylinder f_w[0,1] of the final partition.
struct StaircaseCell {
  Interval interval;
  double mass = 0.0;
  double cum_left = 0.0;  // measure strictly left of the cell
};

/// Piecewise description of the CDF of a stationary measure: the CDF is
/// constant on the gaps between cells and known up to the cell mass inside
/// each cell.
class StaircaseApprox {
 public:
  StaircaseApprox(IFSystem system, WeightVector weights, std::vector<StaircaseCell> cells, double resolution);

  const IFSystem& system() const { return system_; }
  const WeightVector& weights() const { return weights_; }
  const std::vector<StaircaseCell>& cells() const { return cells_; }
  double resolution() const { return resolution_; }
  /// Largest cell mass, which bounds the width of every CDF enclosure.
  double max_cell_mass() const { return max_mass_; }
  /// Sum over cells of mass * width; bounds the error of integrals of
  /// 1-Lipschitz functions of F.
  double error_budget() const { return budget_; }

 private:
  IFSystem system_;
  WeightVector weights_;
  std::vector<StaircaseCell> cells_;
  double resolution_;
  double max_mass_ = 0.0;
  double budget_ = 0.0;
};

/// Splits cylinders until every cell has mass <= resolution.
///
/// Throws HypothesisViolation(disjoint_images) when open images overlap,
/// std::invalid_argument on a bad resolution or a weight/map count mismatch,
/// and ResourceLimit when more than max_cells cells would be produced.
StaircaseApprox build_staircase(const IFSystem& system, const WeightVector& weights,
                                double resolution = kDefaultResolution, std::size_t max_cells = kDefaultMaxCells);

/// Enclosure of F(x) = mu[0, x]. Degenerate at 0, 1 and in gaps at distance
/// at least kPositionSlack from every cell; otherwise the hull of the nearby
/// cell enclosures. Throws std::domain_error for x outside [0, 1].
ValueInterval eval_cdf(const StaircaseApprox& staircase, double x);

/// Sum p_i t_i / (1 - sum p_i rho_i) for affine maps x -> rho_i x + t_i.
/// Throws HypothesisViolation(non_affine) otherwise.
Rational first_moment_closed(const IFSystem& system, const WeightVector& weights);

/// Cost functions accepted by integrate_against.
class CostDescriptor {
 public:
  enum class Kind { identity, signed_identity };

  /// c(x) = x.
  static CostDescriptor identity() { return CostDescriptor(Kind::identity, 0.0); }
  /// c(x) = -x below the threshold and +x from the threshold on.
  static CostDescriptor signed_identity(double threshold) { return CostDescriptor(Kind::signed_identity, threshold); }

  Kind kind() const { return kind_; }
  double threshold() const { return threshold_; }
  double operator()(double x) const;
  /// Range of c over [lo, hi].
  Interval range(const Interval& cell) const;

 private:
  CostDescriptor(Kind kind, double threshold) : kind_(kind), threshold_(threshold) {}
  Kind kind_;
  double threshold_;
};

/// Certified enclosure of the integral of c against the measure.
ValueInterval integrate_against(const StaircaseApprox& staircase, const CostDescriptor& cost);

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
};

/// (x/(r-1))^e and x^e with e = ln(1/p) / ln(r).
/// Throws HypothesisViolation(contraction_ratio) if min{p, 1-p} r < 1 and
/// std::domain_error unless 0 < x <= 1.
Envelope power_law_envelope(double r, double p, double x);

struct EnvelopeCheck {
  std::size_t gaps_checked = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // largest amount by which a bound is crossed
};

/// Checks lower(b) - tol <= v <= upper(a) + tol on every gap (a, b) of
/// width at least 2 kPositionSlack with constant value v, which covers the whole closed gap
/// because both bounds increase.
EnvelopeCheck check_envelope(const StaircaseApprox& staircase, double r, double p, double tolerance = 1e-12);

/// CSV with header x,lower,upper on points i/n, i = 1..n.
void write_envelope_csv(std::ostream& out, double r, double p, std::size_t n);

/// max |F(x / r^n) - p^n F(x)| over gap points x in [1/r, 1] of the reflected
/// system with weights (p, 1-p). Throws std::out_of_range unless r > 2 and
/// 0 < p < 1.
double self_affine_check(double r, double p, unsigned n, unsigned samples);

struct Plateau {
  Rational a;
  Rational b;
  Rational value;
};

struct PlateauTable {
  std::vector<Plateau> rows;  // k = 0..k_max
  Rational limit;             // r^2 / (r^2 + 1)
  bool verified = true;       // false when produced in conjecture mode
};

/// Intervals on which F_{r,p} and F_{r,1-p} of the reflected system agree,
/// obtained by iterating S(x, y) = (1 - x/r^2, 1 - p(1-p) y).
///
/// Outside p = 1/(2m+1) this throws HypothesisViolation(weight_family) unless
/// conjecture_mode is set, in which case the table is marked unverified.
/// Throws HypothesisViolation(contraction_ratio) unless r > 2.
PlateauTable plateau_intervals(const Rational& r, const Rational& p, unsigned k_max, bool conjecture_mode = false);

enum class SignClass { non_negative, non_positive, mixed, undetermined };

std::string_view to_string(SignClass sign);

struct SignReport {
  SignClass sign = SignClass::undetermined;
  double max_difference = 0.0;  // largest F_A - F_B over gap points
  double min_difference = 0.0;  // smallest F_A - F_B over gap points
  double argmax = 0.0;
  double argmin = 0.0;
  std::size_t gap_pieces = 0;
  /// Maximal runs of pieces where the enclosure of F_A - F_B contains 0 in
  /// its interior.
  std::vector<Interval> undetermined_regions;
};

/// Sign pattern of F_A - F_B. Gap values decide; a value counts as nonzero
/// above 1e-12. Identical inputs give non_negative with zero extremes.
SignReport cdf_difference_sign(const StaircaseApprox& a, const StaircaseApprox& b);

/// CSV with header x_left,x_right,kind,value,mass. Zero-width gaps are
/// omitted.
void write_staircase_csv(std::ostream& out, const StaircaseApprox& staircase);

}  // namespace ifsot
