#include "ifsot/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>

namespace ifsot {

namespace {

void require_binary(const Word& w) {
  for (auto s : w.symbols()) {
    if (s != 1 && s != 2) throw std::invalid_argument("non-binary word " + w.str());
  }
}

// Same rule as prec_compare on two codes of equal length.
bool code_precedes(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  const unsigned top = static_cast<unsigned>(std::bit_width(diff)) - 1;  // first disagreement
  const std::uint32_t prefix = a >> (top + 1);
  const bool even = std::popcount(prefix) % 2 == 0;
  const bool a_has_one = ((a >> top) & 1U) == 0;
  return a_has_one == even;
}

void check_open_unit(const Rational& p) {
  if (p.sign() <= 0 || p >= Rational(1)) throw std::invalid_argument("p must lie in (0,1), got " + p.str());
}

}  // namespace

std::strong_ordering prec_compare(const Word& a, const Word& b) {
  require_binary(a);
  require_binary(b);
  const std::size_t common = std::min(a.size(), b.size());
  unsigned twos = 0;
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) {
      const bool even = twos % 2 == 0;
      const bool a_first = (a[i] == 1) == even;
      return a_first ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a[i] == 2) ++twos;
  }
  return a.size() <=> b.size();
}

Word OrderedLevel::word(std::size_t i) const {
  std::vector<std::uint8_t> symbols(n_);
  const std::uint32_t c = codes_.at(i);
  for (unsigned j = 0; j < n_; ++j) symbols[j] = static_cast<std::uint8_t>(1 + ((c >> (n_ - 1 - j)) & 1U));
  return Word(std::move(symbols));
}

unsigned OrderedLevel::twos(std::size_t i) const { return static_cast<unsigned>(std::popcount(codes_[i])); }

OrderedLevel build_level(unsigned n) {
  if (n < 1 || n > OrderedLevel::kMaxLength) {
    throw std::out_of_range("level length must be in [1, 24], got " + std::to_string(n));
  }
  std::vector<std::uint32_t> codes{0U, 1U};
  for (unsigned len = 1; len < n; ++len) {
    std::vector<std::uint32_t> next;
    next.reserve(codes.size() * 2);
    for (std::size_t i = 0; i < codes.size(); ++i) {
      const std::uint32_t base = codes[i] << 1;
      // 1-based odd positions get (.1, .2), even positions (.2, .1).
      if (i % 2 == 0) {
        next.push_back(base);
        next.push_back(base | 1U);
      } else {
        next.push_back(base | 1U);
        next.push_back(base);
      }
    }
    codes = std::move(next);
  }
  OrderedLevel level;
  level.n_ = n;
  level.codes_ = std::move(codes);
  return level;
}

Rational word_weight(const WeightVector& p, const Word& w) {
  Rational out(1);
  for (auto s : w.symbols()) {
    if (s > p.size()) throw std::invalid_argument("word symbol exceeds weight count");
    out *= p.exact(s - 1);
  }
  return out;
}

Rational word_weight(const Rational& p, const Word& w) {
  require_binary(w);
  const auto twos = static_cast<unsigned>(w.count(2));
  return p.pow(static_cast<unsigned>(w.size()) - twos) * (Rational(1) - p).pow(twos);
}

std::vector<Rational> prefix_sums(const OrderedLevel& level, const Rational& p) {
  check_open_unit(p);
  const unsigned n = level.length();
  std::vector<Rational> by_twos;
  by_twos.reserve(n + 1);
  for (unsigned c = 0; c <= n; ++c) by_twos.push_back(p.pow(n - c) * (Rational(1) - p).pow(c));

  std::vector<Rational> sums;
  sums.reserve(level.size());
  Rational acc;
  for (std::size_t i = 0; i < level.size(); ++i) {
    acc += by_twos[level.twos(i)];
    sums.push_back(acc);
  }
  return sums;
}

std::vector<CrossingMatch> crossing_equation_search(unsigned k, unsigned n_max) {
  if (k < 1) throw std::out_of_range("k must be positive");
  if (n_max < 1 || n_max > 20) throw std::out_of_range("n_max must be in [1, 20], got " + std::to_string(n_max));

  // With p = 1/(2k+1): p_w (2k+1)^n = (2k)^{#2(w)} and (1-p)_w (2k+1)^n = (2k)^{#1(w)},
  // so the comparison runs over integers.
  const BigInt base = 2 * BigInt(k);
  std::vector<BigInt> powers{1};
  for (unsigned j = 1; j <= n_max; ++j) powers.push_back(powers.back() * base);

  std::vector<CrossingMatch> matches;
  for (unsigned n = 1; n <= n_max; ++n) {
    const OrderedLevel level = build_level(n);
    const BigInt scale = boost::multiprecision::pow(BigInt(2 * k + 1), n);
    BigInt sum_p = 0;
    BigInt diff = 0;
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      const unsigned twos = level.twos(i);
      sum_p += powers[twos];
      diff += powers[twos];
      diff -= powers[n - twos];
      if (diff == 0) matches.push_back({n, i + 1, Rational(sum_p, scale)});
    }
  }
  return matches;
}

bool segment_symmetry_check(unsigned n, const Rational& p) {
  if (n < 3 || n > OrderedLevel::kMaxLength) throw std::out_of_range("segment check needs 3 <= n <= 24");
  check_open_unit(p);
  const OrderedLevel level = build_level(n);
  const std::size_t first_end = (std::size_t{1} << (n - 1)) - (std::size_t{1} << (n - 3));
  const std::size_t second_end = (std::size_t{1} << n) - (std::size_t{1} << (n - 2));

  const Rational one_minus = Rational(1) - p;
  std::vector<Rational> w_p, w_q;  // weight of a word with c twos
  for (unsigned c = 0; c <= n; ++c) {
    w_p.push_back(p.pow(n - c) * one_minus.pow(c));
    w_q.push_back(one_minus.pow(n - c) * p.pow(c));
  }

  auto histogram = [&](std::size_t from, std::size_t to, const std::vector<Rational>& table) {
    std::map<Rational, std::size_t> h;
    for (std::size_t i = from; i < to; ++i) ++h[table[level.twos(i)]];
    return h;
  };
  return histogram(0, first_end, w_p) == histogram(first_end, second_end, w_q) &&
         histogram(0, first_end, w_q) == histogram(first_end, second_end, w_p);
}

bool geometric_order_check(double r, unsigned n) {
  if (!(r > 2.0)) throw std::out_of_range("geometric order check needs r > 2");
  if (n < 1 || n > 12) throw std::out_of_range("geometric order check needs 1 <= n <= 12");
  const IFSystem system = make_flip_system(Rational::from_double(r));
  const OrderedLevel level = build_level(n);

  std::vector<Interval> cells;
  cells.reserve(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) cells.push_back(cylinder_interval(system, level.word(i)));

  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      if (!code_precedes(level.code(i), level.code(j))) return false;
      if (!(cells[i].hi < cells[j].lo)) return false;
    }
  }
  return true;
}

}  // namespace ifsot
