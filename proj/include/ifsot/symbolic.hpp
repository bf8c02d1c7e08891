#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ifsot/ifs.hpp"
#include "ifsot/rational.hpp"

namespace ifsot {

/// The alternating order on binary words: a precedes b if a is a proper
/// prefix of b, or if at the first disagreement (after a common prefix u)
/// a has 1 and b has 2 with an even number of 2s in u, or a has 2 and b has 1
/// with an odd number. Throws std::invalid_argument on symbols other than 1, 2.
std::strong_ordering prec_compare(const Word& a, const Word& b);

/// All 2^n binary words of length n in ascending alternating order.
///
/// Words are packed as bit codes, most significant bit first, with bit 0 for
/// symbol 1 and bit 1 for symbol 2. Memory is 4 * 2^n bytes (64 MiB at n = 24).
class OrderedLevel {
 public:
  static constexpr unsigned kMaxLength = 24;

  unsigned length() const { return n_; }
  std::size_t size() const { return codes_.size(); }
  /// 0-based position.
  Word word(std::size_t i) const;
  std::uint32_t code(std::size_t i) const { return codes_[i]; }
  /// Number of 2s in the i-th entry.
  unsigned twos(std::size_t i) const;
  const std::vector<std::uint32_t>& codes() const { return codes_; }

 private:
  friend OrderedLevel build_level(unsigned n);
  unsigned n_ = 0;
  std::vector<std::uint32_t> codes_;
};

/// Throws std::out_of_range unless 1 <= n <= 24.
OrderedLevel build_level(unsigned n);

/// prod_i p_{w_i}. Throws std::invalid_argument if a symbol exceeds p.size().
Rational word_weight(const WeightVector& p, const Word& w);
/// Binary shorthand: p^{#1(w)} (1-p)^{#2(w)}.
Rational word_weight(const Rational& p, const Word& w);

/// Cumulative sums of the p-weights along the level; the last entry is 1.
/// Throws std::invalid_argument unless 0 < p < 1.
std::vector<Rational> prefix_sums(const OrderedLevel& level, const Rational& p);

struct CrossingMatch {
  unsigned n = 0;
  std::uint64_t i = 0;  // 1-based position in K_n
  Rational value;

  friend bool operator==(const CrossingMatch&, const CrossingMatch&) = default;
};

/// All (n, i) with n <= n_max and i < 2^n at which the prefix sums for
/// p = 1/(2k+1) and for 1-p coincide, found exactly. The trivial i = 2^n
/// (both sums are 1) is left out. Throws std::out_of_range unless k >= 1 and
/// 1 <= n_max <= 20.
std::vector<CrossingMatch> crossing_equation_search(unsigned k, unsigned n_max);

/// Compares the p-weights of the first 3 * 2^(n-3) entries of K_n with the
/// (1-p)-weights of the next 3 * 2^(n-3), as multisets, and the other way
/// round. Throws std::out_of_range unless 3 <= n <= 24.
bool segment_symmetry_check(unsigned n, const Rational& p);

/// True iff the cylinders of the reflected system (x/r, 1 - x/r) indexed by
/// K_n appear on the line in the same order as the words, pairwise separated.
/// Throws std::out_of_range unless r > 2 and 1 <= n <= 12.
bool geometric_order_check(double r, unsigned n);

}  // namespace ifsot
