#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ifsot/ifs.hpp"

using namespace ifsot;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

IFSystem eg1_system() {
  return {ContractionMap::affine(R("1/5"), 0), ContractionMap::affine(R("1/5"), R("2/5")),
          ContractionMap::affine(R("1/5"), R("4/5"))};
}

}  // namespace

TEST_CASE("evaluate_map") {
  CHECK(evaluate_map(ContractionMap::affine(R("1/5"), R("2/5")), 1.0) == Catch::Approx(0.6).epsilon(1e-15));
  CHECK(evaluate_map(ContractionMap::affine(R("-1/3"), 1), 0.0) == 1.0);
  const double expected = std::sin(std::numbers::pi / 4) / 6;
  CHECK(evaluate_map(ContractionMap::quarter_sine(R("1/6"), 0), 1.0) == Catch::Approx(expected).epsilon(1e-15));
  CHECK(expected == Catch::Approx(0.117851).margin(1e-6));
  CHECK_THROWS_AS(evaluate_map(ContractionMap::affine(R("1/2"), 0), 1.1), std::domain_error);
  CHECK_THROWS_AS(evaluate_map(ContractionMap::affine(R("1/2"), 0), -1e-9), std::domain_error);
  CHECK_NOTHROW(evaluate_map(ContractionMap::affine(R("1/2"), 0), 1.0 + 1e-13));
}

TEST_CASE("map construction enforces contraction, range and monotonicity") {
  CHECK_THROWS_AS(ContractionMap::affine(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(ContractionMap::affine(0, R("1/2")), std::invalid_argument);
  CHECK_THROWS_AS(ContractionMap::affine(R("1/2"), R("3/4")), std::invalid_argument);
  CHECK_THROWS_AS(ContractionMap::affine(R("-1/2"), R("1/4")), std::invalid_argument);
  // |scale| pi/4 < 1 allows scale up to about 1.27, but the image must fit.
  CHECK_THROWS_AS(ContractionMap::quarter_sine(R("1.3"), 0), std::invalid_argument);
  CHECK_NOTHROW(ContractionMap::quarter_sine(R("1.2"), 0));
  CHECK_THROWS_AS(ContractionMap::quarter_sine(R("1.2"), R("0.2")), std::invalid_argument);
  const auto m = ContractionMap::quarter_sine(R("1/3"), R("2/3"));
  CHECK(m.lipschitz() == Catch::Approx(std::numbers::pi / 12));
  CHECK(m.sign() == 1);
  CHECK(ContractionMap::affine(R("-1/6"), R("1/2")).sign() == -1);
}

TEST_CASE("validate_system") {
  const auto r1 = validate_system(eg1_system());
  CHECK(r1.ordering_ok);
  CHECK(r1.disjoint_open_images);
  CHECK(r1.disjoint_closed_images);
  CHECK(r1.all_positive);

  const auto r3 = make_flip_system(3).validation();
  CHECK(r3.ordering_ok);
  CHECK(r3.disjoint_closed_images);
  CHECK_FALSE(r3.all_positive);

  const IFSystem same{ContractionMap::affine(R("1/3"), 0), ContractionMap::affine(R("1/3"), 0)};
  CHECK_FALSE(same.validation().disjoint_open_images);

  // Touching closed images: open images disjoint, closed ones not.
  const IFSystem touching{ContractionMap::affine(R("1/2"), 0), ContractionMap::affine(R("1/2"), R("1/2"))};
  CHECK(touching.validation().disjoint_open_images);
  CHECK_FALSE(touching.validation().disjoint_closed_images);

  const IFSystem reversed{ContractionMap::affine(R("1/3"), R("2/3")), ContractionMap::affine(R("1/3"), 0)};
  CHECK_FALSE(reversed.validation().ordering_ok);

  CHECK_THROWS_AS(IFSystem({ContractionMap::affine(R("1/3"), 0)}), std::invalid_argument);
}

TEST_CASE("check_weight_dominance") {
  CHECK(check_weight_dominance({R("1/2"), R("1/4"), R("1/4")}, {R("1/4"), R("1/4"), R("1/2")}) ==
        Dominance::non_negative);
  CHECK(check_weight_dominance({R("0.3"), R("0.1"), R("0.6")}, {R("0.2"), R("0.5"), R("0.3")}) == Dominance::neither);
  const WeightVector p{R("0.2"), R("0.8")};
  CHECK(check_weight_dominance(p, p) == Dominance::both);
  CHECK_THROWS_AS(check_weight_dominance(p, {R("1/3"), R("1/3"), R("1/3")}), std::invalid_argument);
}

TEST_CASE("dominance is antisymmetric and never mixed for two weights") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 40);
  auto random_weights = [&](std::size_t k) {
    std::vector<BigInt> raw;
    BigInt total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      raw.push_back(num(rng));
      total += raw.back();
    }
    std::vector<Rational> w;
    for (auto& v : raw) w.emplace_back(v, total);
    return WeightVector(w);
  };
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const WeightVector p = random_weights(k);
    const WeightVector q = random_weights(k);
    const Dominance pq = check_weight_dominance(p, q);
    const Dominance qp = check_weight_dominance(q, p);
    CHECK((pq == Dominance::non_negative) == (qp == Dominance::non_positive));
    if (k == 2) CHECK(pq != Dominance::neither);
  }
}

TEST_CASE("weight vectors") {
  CHECK_THROWS_AS(WeightVector({R("0"), R("1")}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({R("0.5"), R("0.4")}), std::invalid_argument);
  CHECK_NOTHROW(WeightVector({R("1/3"), R("1/3"), R("1/3")}));
  const WeightVector p{R("1/4"), R("3/4")};
  CHECK(p.reversed().exact(0) == R("3/4"));
  CHECK(p[1] == 0.75);
}

TEST_CASE("words") {
  const Word w = Word::parse("1221");
  CHECK(w.size() == 4);
  CHECK(w.count(2) == 2);
  CHECK(w.str() == "1221");
  CHECK(Word::parse("12").is_prefix_of(w));
  CHECK_FALSE(Word::parse("11").is_prefix_of(w));
  CHECK_THROWS_AS(Word::parse("10"), std::invalid_argument);
  CHECK(Word().empty());
}

TEST_CASE("cylinder_interval") {
  const IFSystem f3 = make_flip_system(3);
  const Interval a = cylinder_interval(f3, Word::parse("2"));
  CHECK(a.lo == Catch::Approx(2.0 / 3));
  CHECK(a.hi == 1.0);
  const Interval b = cylinder_interval(f3, Word::parse("22"));
  CHECK(b.lo == Catch::Approx(2.0 / 3));
  CHECK(b.hi == Catch::Approx(7.0 / 9));
  const Interval c = cylinder_interval(eg1_system(), Word::parse("31"));
  CHECK(c.lo == Catch::Approx(0.8));
  CHECK(c.hi == Catch::Approx(0.8 + 1.0 / 25));
  CHECK_THROWS_AS(cylinder_interval(f3, Word::parse("3")), std::invalid_argument);
}

TEST_CASE("cylinders nest along prefixes and shrink by the Lipschitz product") {
  const std::vector<IFSystem> systems{
      eg1_system(), make_flip_system(R("2.1")),
      IFSystem{ContractionMap::quarter_sine(R("1/6"), 0), ContractionMap::affine(R("-1/6"), R("1/2")),
               ContractionMap::quarter_sine(R("1/3"), R("2/3"))}};
  std::mt19937_64 rng(11);
  for (const auto& s : systems) {
    std::uniform_int_distribution<int> sym(1, static_cast<int>(s.size()));
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::uint8_t> v;
      const int len = 1 + trial % 9;
      for (int i = 0; i < len; ++i) v.push_back(static_cast<std::uint8_t>(sym(rng)));
      const Word full(v);
      const Word prefix(std::vector<std::uint8_t>(v.begin(), v.begin() + len / 2 + 1));
      const Interval outer = cylinder_interval(s, prefix);
      const Interval inner = cylinder_interval(s, full);
      CHECK(outer.widened(1e-15).contains(inner));
      double lip = 1.0;
      for (auto x : v) lip *= s[x - 1].lipschitz();
      CHECK(inner.width() <= lip + 1e-15);
    }
  }
}
