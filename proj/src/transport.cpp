#include "ifsot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "ifsot/sampler.hpp"
#include "piecewise.hpp"

namespace ifsot {

namespace {

Interval abs_range(const Interval& v) {
  if (v.lo >= 0.0) return v;
  if (v.hi <= 0.0) return {-v.hi, -v.lo};
  return {0.0, std::max(-v.lo, v.hi)};
}

int sign_of(const Interval& v) {
  if (v.lo > 0.0) return 1;
  if (v.hi < 0.0) return -1;
  return 0;
}

ClosedFormValue exact_value(const Rational& oriented) {
  const Rational magnitude = oriented.abs();
  const double d = magnitude.to_double();
  return {ValueInterval::point(d), magnitude, oriented.sign()};
}

// Enclosure of the integral of x d(mu_a - mu_b).
Interval moment_difference(const StaircaseApprox& a, const StaircaseApprox& b) {
  const auto ia = integrate_against(a, CostDescriptor::identity());
  const auto ib = integrate_against(b, CostDescriptor::identity());
  return {ia.lo - ib.hi, ia.hi - ib.lo};
}

ClosedFormValue enclosure_value(const Interval& oriented) {
  return {abs_range(oriented), std::nullopt, sign_of(oriented)};
}

void require_structure(const IFSystem& s, const char* which) {
  const auto& v = s.validation();
  if (!v.ordering_ok) throw HypothesisViolation(Condition::ordering, std::string(which) + " images are not ordered");
  if (!v.disjoint_open_images) {
    throw HypothesisViolation(Condition::disjoint_images, std::string(which) + " has overlapping open images");
  }
}

void require_positive(const IFSystem& s, const char* which) {
  if (!s.validation().all_positive) {
    throw HypothesisViolation(Condition::positivity, std::string(which) + " has a decreasing map");
  }
}

// g(x) <= f(x) on [0,1] for two maps with equal value at 0.
bool dominated(const ContractionMap& g, const ContractionMap& f) {
  if (g.family() == f.family()) return g.coefficient() <= f.coefficient();
  constexpr int kGrid = 1024;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    if (g.apply(x) > f.apply(x) + 1e-15) return false;
  }
  return true;
}

// 1/r when s is (x/r, 1 - x/r).
std::optional<Rational> flip_ratio(const IFSystem& s) {
  if (s.size() != 2 || !s.all_affine()) return std::nullopt;
  const Rational& a = s[0].coefficient();
  if (a.sign() <= 0 || !s[0].offset().is_zero()) return std::nullopt;
  if (s[1].coefficient() != -a || s[1].offset() != Rational(1)) return std::nullopt;
  return a;
}

// 1/r when s is (x/r, x/r + 1 - 1/r).
std::optional<Rational> translated_ratio(const IFSystem& s) {
  if (s.size() != 2 || !s.all_affine()) return std::nullopt;
  const Rational& a = s[0].coefficient();
  if (a.sign() <= 0 || !s[0].offset().is_zero()) return std::nullopt;
  if (s[1].coefficient() != a || s[1].offset() != Rational(1) - a) return std::nullopt;
  return a;
}

// k when p = (1/(2k+1), 2k/(2k+1)).
std::optional<unsigned> odd_family_index(const WeightVector& p) {
  if (p.size() != 2) return std::nullopt;
  const Rational& p1 = p.exact(0);
  if (p1.numerator() != 1 || p1.denominator() % 2 == 0 || p1.denominator() < 3) return std::nullopt;
  if (p.exact(1) != Rational(1) - p1) return std::nullopt;
  return static_cast<unsigned>((p1.denominator() - 1) / 2);
}

ClosedFormValue same_ifs_checked(const IFSystem& f, const WeightVector& p, const IFSystem& g,
                                 const WeightVector& q, double resolution) {
  if (!(f == g)) throw HypothesisViolation(Condition::system_mismatch, "the two measures use different maps");
  return w1_closed_same_ifs(f, p, q, resolution);
}

ClosedFormValue signed_cost_checked(const IFSystem& f, const WeightVector& p, const IFSystem& g,
                                    const WeightVector& q, double resolution) {
  const auto a = flip_ratio(f);
  if (!a) throw HypothesisViolation(Condition::system_shape, "first system is not (x/r, 1 - x/r)");
  if (!(f == g)) throw HypothesisViolation(Condition::system_mismatch, "the two measures use different maps");
  const auto k = odd_family_index(p);
  if (!k || !(q == p.reversed())) {
    throw HypothesisViolation(Condition::weight_family,
                              "weights must be (1/(2k+1), 2k/(2k+1)) and its reverse, got " + p.str() + " and " +
                                  q.str());
  }
  return w1_flip_signed_cost(Rational(1) / *a, *k, resolution).closed;
}

ClosedFormValue flip_vs_translated_checked(const IFSystem& f, const WeightVector& p, const IFSystem& g,
                                           const WeightVector& q) {
  auto af = flip_ratio(f);
  auto ag = translated_ratio(g);
  if (!af || !ag) {
    af = flip_ratio(g);
    ag = translated_ratio(f);
  }
  if (!af || !ag) {
    throw HypothesisViolation(Condition::system_shape, "need (x/r, 1 - x/r) against (x/r, x/r + 1 - 1/r)");
  }
  if (*af != *ag) {
    throw HypothesisViolation(Condition::system_mismatch, "ratios differ: 1/" + (Rational(1) / *af).str() +
                                                              " vs 1/" + (Rational(1) / *ag).str());
  }
  if (!(p == q)) throw HypothesisViolation(Condition::weight_mismatch, "weights differ: " + p.str() + " vs " + q.str());
  return w1_flip_vs_translated(Rational(1) / *af, p);
}

}  // namespace

ValueInterval w1_numeric(const StaircaseApprox& a, const StaircaseApprox& b) {
  detail::CompensatedSum lo;
  detail::CompensatedSum hi;
  detail::walk_pieces(a, b, [&](const detail::Piece& piece) {
    const Interval d{piece.fa.lo - piece.fb.hi, piece.fa.hi - piece.fb.lo};
    const Interval m = abs_range(d);
    const double width = piece.hi - piece.lo;
    lo.add(width * m.lo);
    hi.add(width * m.hi);
  });
  constexpr double kRounding = 1e-13;
  return {std::max(0.0, lo.value() - kRounding), hi.value() + kRounding};
}

ClosedFormValue w1_closed_same_ifs(const IFSystem& system, const WeightVector& p, const WeightVector& q,
                                   double resolution) {
  if (p.size() != system.size() || q.size() != system.size()) {
    throw HypothesisViolation(Condition::map_count, "weights and maps differ in length");
  }
  require_structure(system, "system");
  require_positive(system, "system");
  if (check_weight_dominance(p, q) == Dominance::neither) {
    throw HypothesisViolation(Condition::weight_dominance, "partial sums of p - q change sign");
  }
  if (system.all_affine()) return exact_value(first_moment_closed(system, p) - first_moment_closed(system, q));
  return enclosure_value(moment_difference(build_staircase(system, p, resolution), build_staircase(system, q, resolution)));
}

ClosedFormValue w1_closed_two_ifs(const IFSystem& f, const IFSystem& g, const WeightVector& p, const WeightVector& q,
                                  double resolution) {
  if (f.size() != 2 || g.size() != 2 || p.size() != 2 || q.size() != 2) {
    throw HypothesisViolation(Condition::map_count, "formula is for two maps");
  }
  require_positive(f, "f");
  require_positive(g, "g");
  require_structure(f, "f");
  for (std::size_t i = 0; i < 2; ++i) {
    if (g[i].offset() != f[i].offset()) {
      throw HypothesisViolation(Condition::anchored_maps, "g_" + std::to_string(i + 1) + "(0) != f_" +
                                                              std::to_string(i + 1) + "(0)");
    }
    if (!dominated(g[i], f[i])) {
      throw HypothesisViolation(Condition::pointwise_domination,
                                "g_" + std::to_string(i + 1) + " exceeds f_" + std::to_string(i + 1));
    }
  }
  if (p.exact(0) > q.exact(0)) {
    throw HypothesisViolation(Condition::first_weight_order, "p_1 = " + p.exact(0).str() + " > q_1 = " + q.exact(0).str());
  }
  if (f.all_affine() && g.all_affine()) return exact_value(first_moment_closed(g, q) - first_moment_closed(f, p));
  return enclosure_value(moment_difference(build_staircase(g, q, resolution), build_staircase(f, p, resolution)));
}

SignedCostResult w1_flip_signed_cost(const Rational& r, unsigned k, double resolution) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!(r > Rational(2))) throw HypothesisViolation(Condition::contraction_ratio, "need r > 2");
  const Rational odd(2 * static_cast<std::int64_t>(k) + 1);
  if (r < odd) {
    throw HypothesisViolation(Condition::contraction_ratio, "need r >= 2k+1 = " + odd.str() + ", got " + r.str());
  }
  const IFSystem system = make_flip_system(r);
  const WeightVector p{Rational(1) / odd, Rational(1) - Rational(1) / odd};
  const WeightVector q = p.reversed();
  const StaircaseApprox sp = build_staircase(system, p, resolution);
  const StaircaseApprox sq = build_staircase(system, q, resolution);

  const Rational r2 = r * r;
  const auto cost = CostDescriptor::signed_identity((r2 / (r2 + Rational(1))).to_double());
  const auto ip = integrate_against(sp, cost);
  const auto iq = integrate_against(sq, cost);

  SignedCostResult result;
  result.closed = enclosure_value({ip.lo - iq.hi, ip.hi - iq.lo});
  result.numeric = w1_numeric(sp, sq);
  result.intersect = result.closed.value.intersects(result.numeric.widened(kClosedFormSlack));
  return result;
}

ClosedFormValue w1_flip_vs_translated(const Rational& r, const WeightVector& p) {
  if (!(r > Rational(2))) throw HypothesisViolation(Condition::contraction_ratio, "need r > 2");
  if (p.size() != 2) throw HypothesisViolation(Condition::map_count, "weights must have two entries");
  const Rational diff =
      first_moment_closed(make_cantor_system(r), p) - first_moment_closed(make_flip_system(r), p);
  // The oriented expression is mean_g - mean_f for p_1 < 1/2 and the reverse
  // for p_1 > 1/2.
  const Rational half(BigInt(1), BigInt(2));
  ClosedFormValue out = exact_value(diff);
  const Rational oriented = p.exact(0) < half ? diff : -diff;
  out.orientation = p.exact(0) == half ? 0 : oriented.sign();
  return out;
}

std::vector<std::string> closed_form_names() {
  return {closed_form::same_ifs, closed_form::dominated_pair, closed_form::flip_signed_cost,
          closed_form::flip_vs_translated};
}

ClosedFormOutcome try_closed_form(const std::string& name, const IFSystem& f, const WeightVector& p,
                                  const IFSystem& g, const WeightVector& q, double resolution) {
  ClosedFormOutcome out;
  out.name = name;
  try {
    if (name == closed_form::same_ifs) {
      out.value = same_ifs_checked(f, p, g, q, resolution);
    } else if (name == closed_form::dominated_pair) {
      out.value = w1_closed_two_ifs(f, g, p, q, resolution);
    } else if (name == closed_form::flip_signed_cost) {
      out.value = signed_cost_checked(f, p, g, q, resolution);
    } else if (name == closed_form::flip_vs_translated) {
      out.value = flip_vs_translated_checked(f, p, g, q);
    } else {
      throw std::invalid_argument("unknown closed form '" + name + "'");
    }
    out.hypotheses_held = true;
  } catch (const HypothesisViolation& e) {
    out.violated = e.condition();
    out.detail = e.what();
  }
  return out;
}

W1Report w1_report(const IFSystem& f, const WeightVector& p, const IFSystem& g, const WeightVector& q,
                   const W1Options& options) {
  W1Report report;
  const StaircaseApprox a = build_staircase(f, p, options.resolution);
  const StaircaseApprox b = build_staircase(g, q, options.resolution);
  report.numeric = w1_numeric(a, b);
  report.numeric_budget = report.numeric.width();

  for (const auto& name : closed_form_names()) {
    ClosedFormOutcome outcome = try_closed_form(name, f, p, g, q, options.resolution);
    if (outcome.value) {
      outcome.consistent = outcome.value->value.intersects(report.numeric.widened(kClosedFormSlack));
      report.consistent = report.consistent && outcome.consistent;
    }
    report.closed_forms.push_back(std::move(outcome));
  }

  if (options.mc_count > 0) {
    const SampleSet sa = chaos_game(f, p, options.mc_count, options.burn_in, options.seed);
    const SampleSet sb = chaos_game(g, q, options.mc_count, options.burn_in, options.seed + 1);
    const EmpiricalW1 e = w1_empirical(sa, sb);
    report.monte_carlo = MonteCarloEstimate{e.estimate, e.std_error, options.mc_count, options.seed};
    const double tolerance = 4.0 * e.std_error + 0.5 * report.numeric.width();
    report.consistent = report.consistent && std::abs(e.estimate - report.numeric.mid()) <= tolerance;
  }
  return report;
}

std::string to_json(const W1Report& report, int indent) {
  using nlohmann::json;
  json doc;
  doc["schema"] = 1;
  doc["numeric"] = {{"lo", report.numeric.lo}, {"hi", report.numeric.hi}};
  doc["numeric_budget"] = report.numeric_budget;
  json forms = json::array();
  for (const auto& c : report.closed_forms) {
    json entry;
    entry["name"] = c.name;
    entry["hypotheses_held"] = c.hypotheses_held;
    entry["violated"] = c.violated ? json(std::string(to_string(*c.violated))) : json(nullptr);
    entry["detail"] = c.detail;
    if (c.value) {
      entry["value"] = {{"lo", c.value->value.lo}, {"hi", c.value->value.hi}};
      entry["exact"] = c.value->exact ? json(c.value->exact->str()) : json(nullptr);
      entry["orientation"] = c.value->orientation;
      entry["consistent"] = c.consistent;
    } else {
      entry["value"] = nullptr;
      entry["exact"] = nullptr;
      entry["orientation"] = nullptr;
      entry["consistent"] = nullptr;
    }
    forms.push_back(std::move(entry));
  }
  doc["closed_forms"] = std::move(forms);
  if (report.monte_carlo) {
    const auto& mc = *report.monte_carlo;
    doc["monte_carlo"] = {{"estimate", mc.estimate}, {"std_error", mc.std_error}, {"count", mc.count}, {"seed", mc.seed}};
  } else {
    doc["monte_carlo"] = nullptr;
  }
  doc["consistent"] = report.consistent;
  return doc.dump(indent);
}

}  // namespace ifsot
