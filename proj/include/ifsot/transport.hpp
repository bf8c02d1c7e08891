#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifsot/errors.hpp"
#include "ifsot/ifs.hpp"
#include "ifsot/interval.hpp"
#include "ifsot/rational.hpp"
#include "ifsot/staircase.hpp"

namespace ifsot {

/// Enclosure of the integral of |F_A - F_B| over [0, 1]. Exactly symmetric in
/// its arguments.
ValueInterval w1_numeric(const StaircaseApprox& a, const StaircaseApprox& b);

/// A closed-form distance. The value is nonnegative; orientation is the sign
/// of the oriented expression the formula is usually written with (+1, 0, -1).
struct ClosedFormValue {
  ValueInterval value;
  std::optional<Rational> exact;
  int orientation = 0;
};

/// Same IFS, two weight vectors. Needs positive maps, ordered images with
/// disjoint interiors and sign-constant partial sums of p - q. Affine maps give
/// an exact value; otherwise the moments are enclosed with staircases at the
/// given resolution.
ClosedFormValue w1_closed_same_ifs(const IFSystem& system, const WeightVector& p, const WeightVector& q,
                                   double resolution = kDefaultResolution);

/// Two-map systems f >= g with common anchors g_i(0) = f_i(0) and p_1 <= q_1;
/// the distance between mu^(f,p) and mu^(g,q).
ClosedFormValue w1_closed_two_ifs(const IFSystem& f, const IFSystem& g, const WeightVector& p,
                                  const WeightVector& q, double resolution = kDefaultResolution);

struct SignedCostResult {
  ClosedFormValue closed;  // |integral of c_r d(mu_p - mu_q)|
  ValueInterval numeric;   // w1_numeric of the same pair
  bool intersect = false;  // numeric widened by kClosedFormSlack meets closed
};

inline constexpr double kClosedFormSlack = 1e-9;

/// Reflected system (x/r, 1 - x/r) with p = (1/(2k+1), 2k/(2k+1)) against the
/// reversed weights, integrated against c_r(x) = -x below r^2/(r^2+1) and +x
/// from there on. Throws HypothesisViolation(contraction_ratio) if r < 2k+1.
SignedCostResult w1_flip_signed_cost(const Rational& r, unsigned k, double resolution = kDefaultResolution);

/// Reflected system against the translated system (x/r, x/r + (r-1)/r), both
/// with weights p. Exact. Throws HypothesisViolation unless r > 2 and p has two
/// entries.
ClosedFormValue w1_flip_vs_translated(const Rational& r, const WeightVector& p);

struct ClosedFormOutcome {
  std::string name;
  bool hypotheses_held = false;
  std::optional<Condition> violated;
  std::string detail;
  std::optional<ClosedFormValue> value;
  bool consistent = true;  // set by w1_report
};

/// Closed-form names used in reports and the example registry.
namespace closed_form {
inline constexpr const char* same_ifs = "same_ifs";
inline constexpr const char* dominated_pair = "dominated_pair";
inline constexpr const char* flip_signed_cost = "flip_system_signed_cost";
inline constexpr const char* flip_vs_translated = "flip_vs_cantor";
}  // namespace closed_form

/// Tries one closed form on a generic pair (f, p) vs (g, q), recognizing the
/// special systems from their coefficients. Never throws HypothesisViolation;
/// the outcome records it instead.
ClosedFormOutcome try_closed_form(const std::string& name, const IFSystem& f, const WeightVector& p,
                                  const IFSystem& g, const WeightVector& q, double resolution = kDefaultResolution);

std::vector<std::string> closed_form_names();

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct W1Options {
  double resolution = kDefaultResolution;
  std::uint64_t mc_count = 0;  // 0 disables the sampler
  std::uint64_t seed = 1;
  std::uint64_t burn_in = 64;
};

struct W1Report {
  ValueInterval numeric;
  double numeric_budget = 0.0;
  std::vector<ClosedFormOutcome> closed_forms;
  std::optional<MonteCarloEstimate> monte_carlo;
  bool consistent = true;
};

/// Runs the numeric integral, every closed form, and optionally the sampler.
/// A closed form is consistent when it meets the numeric enclosure widened by
/// kClosedFormSlack; the sampler when within 4 standard errors of the
/// numeric midpoint (plus the enclosure half-width).
W1Report w1_report(const IFSystem& f, const WeightVector& p, const IFSystem& g, const WeightVector& q,
                   const W1Options& options = {});

/// JSON document with "schema": 1.
std::string to_json(const W1Report& report, int indent = 2);

}  // namespace ifsot
