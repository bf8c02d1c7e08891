// Acceptance checks AC1..AC12. Each prints one PASS/FAIL line.
//
//   ifsot_acceptance                 run all
//   ifsot_acceptance --criterion 7   run one

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ifsot/registry.hpp"
#include "ifsot/sampler.hpp"
#include "ifsot/staircase.hpp"
#include "ifsot/symbolic.hpp"
#include "ifsot/transport.hpp"

using namespace ifsot;

namespace {

// Pinned tolerances.
constexpr double kEnclosureWidth = 1e-4;     // AC1, AC2
constexpr double kClosedTolerance = 1e-12;   // AC2 closed value
constexpr double kSigmas = 4.0;              // AC1, AC2, AC8
constexpr std::uint64_t kMcCount = 1000000;  // AC1, AC2, AC8
constexpr double kTightness = 1e-12;         // AC9
constexpr double kSelfAffine = 1e-12;        // AC10
constexpr double kSignThreshold = 1e-12;     // AC7: |D| above this counts as signed
constexpr double kTriangleFactor = 3.0;      // AC12
constexpr double kAc1Seconds = 5.0;
constexpr double kAc6Seconds = 60.0;
constexpr double kAc8Seconds = 30.0;

Rational R(const char* s) { return Rational::parse(s); }

struct Outcome {
  Outcome() { detail.precision(10); }

  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[" << what << "] ";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// |estimate - numeric midpoint| <= 4 se + half the enclosure width.
bool mc_agrees(const EmpiricalW1& mc, const ValueInterval& numeric) {
  return std::abs(mc.estimate - numeric.mid()) <= kSigmas * mc.std_error + 0.5 * numeric.width();
}

EmpiricalW1 mc_pair(const IFSystem& f, const WeightVector& p, const IFSystem& g, const WeightVector& q) {
  const auto a = chaos_game(f, p, kMcCount, 64, 1);
  const auto b = chaos_game(g, q, kMcCount, 64, 2);
  return w1_empirical(a, b);
}

IFSystem three_fifths() {
  return IFSystem{ContractionMap::affine(R("1/5"), 0), ContractionMap::affine(R("1/5"), R("2/5")),
                  ContractionMap::affine(R("1/5"), R("4/5"))};
}

void ac1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const IFSystem s = three_fifths();
  const WeightVector p{R("1/2"), R("1/4"), R("1/4")};
  const WeightVector q{R("1/4"), R("1/4"), R("1/2")};
  const auto closed = w1_closed_same_ifs(s, p, q);
  o.require(closed.exact && *closed.exact == R("1/4"), "closed form exactly 1/4");
  const auto num = w1_numeric(build_staircase(s, p, 1e-6), build_staircase(s, q, 1e-6));
  const double elapsed = seconds_since(t0);
  o.require(num.contains(0.25), "enclosure contains 0.25");
  o.require(num.width() <= kEnclosureWidth, "enclosure width");
  o.require(elapsed <= kAc1Seconds, "runtime");
  const auto mc = mc_pair(s, p, s, q);
  o.require(mc_agrees(mc, num), "monte carlo");
  o.detail << "closed=" << (closed.exact ? closed.exact->str() : "?") << " numeric=" << num << " width=" << num.width()
           << " mc=" << mc.estimate << "+-" << mc.std_error << " t=" << elapsed << "s";
}

void ac2(Outcome& o) {
  const IFSystem s{ContractionMap::affine(R("1/5"), 0), ContractionMap::affine(R("3/5"), R("1/5")),
                   ContractionMap::affine(R("1/5"), R("4/5"))};
  const WeightVector p{R("1/4"), R("1/3"), R("5/12")};
  const WeightVector q{R("1/6"), R("1/4"), R("7/12")};
  const double target = 29.0 / 210.0;
  const auto closed = w1_closed_same_ifs(s, p, q);
  o.require(std::abs(closed.value.mid() - target) <= kClosedTolerance, "closed value 29/210");
  const auto num = w1_numeric(build_staircase(s, p, 1e-6), build_staircase(s, q, 1e-6));
  o.require(num.contains(target), "enclosure contains 29/210");
  o.require(num.width() <= kEnclosureWidth, "enclosure width");
  const auto mc = mc_pair(s, p, s, q);
  o.require(mc_agrees(mc, num), "monte carlo");
  o.detail << "closed=" << (closed.exact ? closed.exact->str() : "?") << " numeric=" << num << " mc=" << mc.estimate
           << "+-" << mc.std_error;
}

template <class F>
std::optional<Condition> raised(F&& f) {
  try {
    f();
  } catch (const HypothesisViolation& e) {
    return e.condition();
  }
  return std::nullopt;
}

void ac3(Outcome& o) {
  struct Guard {
    const char* id;
    Condition expected;
  };
  const Guard guards[] = {{"eg4", Condition::weight_dominance},  {"eg5", Condition::positivity},
                          {"eg7", Condition::first_weight_order}, {"eg8", Condition::first_weight_order},
                          {"eg11", Condition::weight_family},     {"eg15", Condition::system_mismatch},
                          {"eg16", Condition::weight_mismatch}};
  for (const auto& g : guards) {
    const ExampleSpec& ex = *find_example(g.id);
    const ExamplePair pair = load_pair(ex);
    std::optional<Condition> got;
    const std::string& name = ex.expectation.closed_form;
    if (name == closed_form::same_ifs) {
      got = raised([&] { w1_closed_same_ifs(pair.f, pair.p, pair.q); });
    } else if (name == closed_form::dominated_pair) {
      got = raised([&] { w1_closed_two_ifs(pair.f, pair.g, pair.p, pair.q); });
    } else {
      got = try_closed_form(name, pair.f, pair.p, pair.g, pair.q).violated;
    }
    o.require(got == g.expected, std::string(g.id) + " raises " + std::string(to_string(g.expected)));
    o.detail << g.id << "=" << (got ? to_string(*got) : "none") << " ";
  }

#ifdef IFSOT_CLI_PATH
  const auto log = std::filesystem::temp_directory_path() / "ifsot_acceptance_examples.txt";
  const std::string cmd = std::string("\"") + IFSOT_CLI_PATH + "\" examples --all > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  o.require(status == 0, "examples --all exit code");
  o.require(text.find("16/16 expectations met") != std::string::npos, "16/16 expectations");
  o.detail << "cli_status=" << status;
  std::filesystem::remove(log);
#else
  o.require(false, "CLI path not configured");
#endif
}

void ac4(Outcome& o) {
  for (unsigned n = 1; n <= 10; ++n) {
    const OrderedLevel level = build_level(n);
    std::vector<Word> words;
    for (std::size_t i = 0; i < level.size(); ++i) words.push_back(level.word(i));
    bool ok = true;
    for (std::size_t i = 0; i < words.size() && ok; ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (prec_compare(words[i], words[j]) != (i <=> j)) {
          ok = false;
          break;
        }
      }
    }
    o.require(ok, "pairwise agreement n=" + std::to_string(n));
  }
  const char* printed[] = {
      "1≺2",
      "11≺12≺22≺21",
      "111≺112≺122≺121≺221≺222≺212≺211",
      "1111≺1112≺1122≺1121≺1221≺1222≺1212≺1211≺2211≺2212≺2222≺2221≺2121≺2122≺2112≺2111",
  };
  for (unsigned n = 1; n <= 4; ++n) {
    const OrderedLevel level = build_level(n);
    std::string s;
    for (std::size_t i = 0; i < level.size(); ++i) s += (i ? "≺" : "") + level.word(i).str();
    o.require(s == printed[n - 1], "printed enumeration n=" + std::to_string(n));
  }
  o.detail << "n<=10 exhaustive, n=1..4 enumerations";
}

void ac5(Outcome& o) {
  for (double r : {2.1, 3.0, 5.0, 7.0}) {
    for (unsigned n = 1; n <= 8; ++n) {
      o.require(geometric_order_check(r, n), "r=" + std::to_string(r) + " n=" + std::to_string(n));
    }
  }
  o.detail << "r in {2.1,3,5,7}, n<=8";
}

void ac6(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t early = 0;
  for (unsigned k = 1; k <= 3; ++k) {
    const Rational p = Rational(1) / Rational(2 * k + 1);
    const auto matches = crossing_equation_search(k, 12);
    std::vector<std::string> early_examples;
    for (unsigned n = 2; n <= 12; ++n) {
      const std::uint64_t edge = (std::uint64_t{1} << n) - (std::uint64_t{1} << (n - 2));
      bool at_edge = false;
      for (const auto& m : matches) {
        if (m.n != n) continue;
        if (m.i == edge) at_edge = true;
        if (m.i <= edge - 1) {
          ++early;
          if (early_examples.size() < 3) early_examples.push_back("(" + std::to_string(n) + "," + std::to_string(m.i) + ")");
        }
        if (n == 2 && m.i == edge) {
          o.require(m.value == Rational(1) - p * (Rational(1) - p), "value 1-p(1-p) at n=2, k=" + std::to_string(k));
        }
      }
      o.require(at_edge, "match at 2^n-2^(n-2), k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
    o.detail << "k=" << k << " early:";
    for (const auto& e : early_examples) o.detail << e;
    o.detail << " ";
  }
  const double elapsed = seconds_since(t0);
  o.require(early == 0, "no match below 2^n-2^(n-2)");
  o.require(elapsed <= kAc6Seconds, "runtime");
  o.detail << "early_total=" << early << " t=" << elapsed << "s";
}

void ac7(Outcome& o) {
  const Rational r(3);
  const Rational p = R("1/3");
  const IFSystem sys = make_flip_system(r);
  const auto Fp = build_staircase(sys, {p, Rational(1) - p}, 1e-5);
  const auto Fq = build_staircase(sys, {Rational(1) - p, p}, 1e-5);

  const auto table = plateau_intervals(r, p, 4);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    const double a = row.a.to_double();
    const double b = row.b.to_double();
    const double v = row.value.to_double();
    bool ok = true;
    for (int j = 1; j < 64; ++j) {
      const double x = a + (b - a) * j / 64.0;
      const auto fp = eval_cdf(Fp, x);
      const auto fq = eval_cdf(Fq, x);
      ok = ok && fp.width() == 0.0 && fq.width() == 0.0 && fp.lo == fq.lo && std::abs(fp.lo - v) <= 1e-15;
    }
    o.require(ok, "plateau k=" + std::to_string(k));
  }

  // Sign of F_{r,1-p} - F_{r,p} on gap points of F_{r,p}, plateaus excluded.
  const auto deep = plateau_intervals(r, p, 12);
  const double limit = deep.limit.to_double();
  auto on_plateau = [&](double x) {
    for (const auto& row : deep.rows) {
      if (x >= row.a.to_double() && x <= row.b.to_double()) return true;
    }
    return false;
  };
  std::size_t sampled = 0;
  std::size_t wrong_below = 0;
  std::size_t wrong_above = 0;
  double first_wrong = -1.0;
  double worst = 0.0;
  const auto& cells = Fp.cells();
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const double a = cells[i].interval.hi;
    const double b = cells[i + 1].interval.lo;
    if (!(b > a)) continue;
    const double x = 0.5 * (a + b);
    if (on_plateau(x)) continue;
    const auto fq = eval_cdf(Fq, x);
    const auto fp = eval_cdf(Fp, x);
    if (fq.width() != 0.0 || fp.width() != 0.0) continue;  // only points exact for both
    ++sampled;
    const double d = fq.lo - fp.lo;
    const bool ok = x < limit ? d > kSignThreshold : d < -kSignThreshold;
    if (!ok) {
      (x < limit ? wrong_below : wrong_above)++;
      if (first_wrong < 0) first_wrong = x;
      if (std::abs(d) > std::abs(worst) || worst == 0.0) worst = d;
    }
  }
  o.require(wrong_below == 0 && wrong_above == 0, "sign pattern around r^2/(r^2+1)");
  o.detail << "sampled=" << sampled << " wrong_below=" << wrong_below << " wrong_above=" << wrong_above
           << " first_wrong_x=" << first_wrong << " largest_wrong_D=" << worst;
}

void ac8_case(Outcome& o, const Rational& r, unsigned k) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = w1_flip_signed_cost(r, k);
  const double elapsed = seconds_since(t0);
  const std::string tag = "(" + r.str() + "," + std::to_string(k) + ")";
  o.require(res.intersect, tag + " enclosures intersect");
  o.require(elapsed <= kAc8Seconds, tag + " runtime");
  const Rational p = Rational(1) / Rational(2 * k + 1);
  const IFSystem sys = make_flip_system(r);
  const auto mc = mc_pair(sys, {p, Rational(1) - p}, sys, {Rational(1) - p, p});
  o.require(mc_agrees(mc, res.numeric), tag + " monte carlo");
  o.detail << tag << " closed=" << res.closed.value << " numeric=" << res.numeric << " mc=" << mc.estimate << "+-"
           << mc.std_error << " t=" << elapsed << "s; ";
}

void ac8(Outcome& o) {
  ac8_case(o, Rational(3), 1);
  ac8_case(o, Rational(7), 2);
}

void ac9(Outcome& o) {
  for (auto [r, p] : {std::pair{"2.1", "1/2.1"}, std::pair{"3", "2/3"}}) {
    const Rational rr = R(r);
    const Rational pp = R(p);
    const auto st = build_staircase(make_flip_system(rr), {pp, Rational(1) - pp}, 1e-5);
    const auto check = check_envelope(st, rr.to_double(), pp.to_double());
    o.require(check.violations == 0 && check.gaps_checked > 0, std::string("envelope r=") + r);
    o.detail << "r=" << r << " gaps=" << check.gaps_checked << " violations=" << check.violations << "; ";
  }
  const auto st = build_staircase(make_flip_system(Rational(3)), {R("2/3"), R("1/3")}, 1e-5);
  // F has no atoms, so F(1/3) is the value on the gap (1/3, 2/3).
  const double f = eval_cdf(st, 0.5).lo;
  const double upper = power_law_envelope(3.0, 2.0 / 3.0, 1.0 / 3.0).upper;
  o.require(std::abs(f - upper) <= kTightness, "tightness at 1/3");
  o.detail << "F(1/3)=" << f << " upper=" << upper;
}

void ac10(Outcome& o) {
  double worst = 0.0;
  for (auto [r, p] : {std::pair{3.0, 1.0 / 3.0}, std::pair{4.0, 0.25}, std::pair{2.5, 0.3}}) {
    for (unsigned n = 1; n <= 5; ++n) {
      const double d = self_affine_check(r, p, n, 200);
      worst = std::max(worst, d);
      o.require(d <= kSelfAffine, "r=" + std::to_string(r) + " n=" + std::to_string(n));
    }
  }
  o.detail << "max_defect=" << worst;
}

void ac11(Outcome& o) {
  for (const char* r : {"2.5", "3", "10"}) {
    const auto v = w1_flip_vs_translated(R(r), {R("1/2"), R("1/2")});
    o.require(v.exact && v.exact->is_zero(), std::string("zero at r=") + r);
  }
  const WeightVector p{R("1/4"), R("3/4")};
  const auto v = w1_flip_vs_translated(R("2.5"), p);
  const auto num = w1_numeric(build_staircase(make_flip_system(R("2.5")), p, 1e-6),
                              build_staircase(make_cantor_system(R("2.5")), p, 1e-6));
  o.require(num.widened(kClosedFormSlack).contains(v.value.mid()), "eg14 value in enclosure");
  o.detail << "eg14 closed=" << (v.exact ? v.exact->str() : "?") << " numeric=" << num;
}

void ac12(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Measure {
    StaircaseApprox st;
  };
  std::vector<StaircaseApprox> measures;
  while (measures.size() < 50) {
    // Ratios in [0.1, 0.45], left map anchored at 0 or 1, a positive gap.
    const double r1 = 0.1 + 0.35 * u(rng);
    const double r2 = 0.1 + 0.35 * u(rng);
    const double gap = (1.0 - r1 - r2) * (0.1 + 0.9 * u(rng));
    const double w = 0.05 + 0.9 * u(rng);
    const Rational a = Rational::from_double(r1);
    const Rational b = Rational::from_double(r2);
    const Rational left_hi = a;
    const Rational right_lo = Rational::from_double(r1 + gap);
    std::vector<ContractionMap> maps;
    maps.push_back(u(rng) < 0.5 ? ContractionMap::affine(a, 0) : ContractionMap::affine(-a, left_hi));
    maps.push_back(u(rng) < 0.5 ? ContractionMap::affine(b, right_lo) : ContractionMap::affine(-b, right_lo + b));
    const IFSystem sys(std::move(maps));
    if (!sys.validation().disjoint_open_images) continue;
    measures.push_back(build_staircase(sys, WeightVector::from_doubles(std::vector<double>{w, 1 - w}), 1e-5));
  }
  std::size_t asym = 0;
  std::size_t self_bad = 0;
  std::size_t triangle_bad = 0;
  double worst_excess = -1.0;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const auto& A = measures[i];
    const auto& B = measures[(i + 1) % measures.size()];
    const auto& C = measures[(i + 2) % measures.size()];
    const auto ab = w1_numeric(A, B);
    const auto ba = w1_numeric(B, A);
    if (!(ab.lo == ba.lo && ab.hi == ba.hi)) ++asym;
    if (!w1_numeric(A, A).contains(0.0)) ++self_bad;
    const auto bc = w1_numeric(B, C);
    const auto ac = w1_numeric(A, C);
    const double slack = kTriangleFactor * (ab.width() + bc.width() + ac.width());
    const double excess = ac.mid() - (ab.mid() + bc.mid());
    worst_excess = std::max(worst_excess, excess);
    if (excess > slack) ++triangle_bad;
  }
  o.require(asym == 0, "exact symmetry");
  o.require(self_bad == 0, "self distance contains 0");
  o.require(triangle_bad == 0, "triangle inequality");
  o.detail << "systems=" << measures.size() << " asym=" << asym << " self_bad=" << self_bad
           << " triangle_bad=" << triangle_bad << " worst_excess=" << worst_excess;
}

const std::vector<std::function<void(Outcome&)>>& criteria() {
  static const std::vector<std::function<void(Outcome&)>> all = {ac1, ac2, ac3, ac4,  ac5,  ac6,
                                                                 ac7, ac8, ac9, ac10, ac11, ac12};
  return all;
}

bool run(std::size_t n) {
  Outcome o;
  try {
    criteria()[n - 1](o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  std::cout << "AC" << n << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << o.detail.str() << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::cerr << "criterion must be 1.." << criteria().size() << "\n";
      return 2;
    }
    return run(static_cast<std::size_t>(n)) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: ifsot_acceptance [--criterion N]\n";
    return 2;
  }
  bool all = true;
  for (std::size_t n = 1; n <= criteria().size(); ++n) all = run(n) && all;
  return all ? 0 : 1;
}
