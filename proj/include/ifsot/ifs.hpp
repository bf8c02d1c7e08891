#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifsot/interval.hpp"
#include "ifsot/rational.hpp"

namespace ifsot {

/// Slack used when comparing image endpoints and domain bounds.
inline constexpr double kEndpointSlack = 1e-12;

enum class MapFamily {
  affine,       // x -> slope * x + intercept
  quarter_sine, // x -> scale * sin(pi x / 4) + offset
};

/// A strictly monotone contraction of [0, 1] from a closed set of families.
///
/// Coefficients are kept exactly so that closed forms can be evaluated in
/// rational arithmetic; a double copy is cached for evaluation.
class ContractionMap {
 public:
  /// Throws std::invalid_argument unless the map is a strictly monotone
  /// contraction sending [0, 1] into [0, 1].
  static ContractionMap affine(Rational slope, Rational intercept);
  static ContractionMap quarter_sine(Rational scale, Rational offset);

  MapFamily family() const { return family_; }
  bool is_affine() const { return family_ == MapFamily::affine; }
  /// Slope (affine) or scale (quarter-sine).
  const Rational& coefficient() const { return coefficient_; }
  /// Intercept (affine) or offset (quarter-sine).
  const Rational& offset() const { return offset_; }

  /// Unchecked evaluation; valid for x in [0, 1].
  double apply(double x) const noexcept;
  double operator()(double x) const noexcept { return apply(x); }

  /// +1 for increasing maps, -1 for decreasing ones.
  int sign() const { return coefficient_.sign(); }
  double lipschitz() const { return lipschitz_; }
  /// Image of [0, 1], endpoints sorted.
  Interval image() const { return Interval::hull(apply(0.0), apply(1.0)); }

  std::string str() const;

  friend bool operator==(const ContractionMap& a, const ContractionMap& b) {
    return a.family_ == b.family_ && a.coefficient_ == b.coefficient_ && a.offset_ == b.offset_;
  }

 private:
  ContractionMap(MapFamily family, Rational coefficient, Rational offset);

  MapFamily family_;
  Rational coefficient_;
  Rational offset_;
  double coefficient_d_;
  double offset_d_;
  double lipschitz_;
};

/// Checked evaluation: throws std::domain_error if x lies outside [0, 1] by
/// more than kEndpointSlack.
double evaluate_map(const ContractionMap& map, double x);

struct ValidationReport {
  bool ordering_ok = false;
  bool disjoint_open_images = false;
  bool disjoint_closed_images = false;
  bool all_positive = false;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Ordered list of at least two contraction maps. Immutable.
class IFSystem {
 public:
  IFSystem(std::vector<ContractionMap> maps);  // NOLINT(google-explicit-constructor)
  IFSystem(std::initializer_list<ContractionMap> maps) : IFSystem(std::vector<ContractionMap>(maps)) {}

  std::size_t size() const { return maps_.size(); }
  const ContractionMap& operator[](std::size_t i) const { return maps_[i]; }
  std::span<const ContractionMap> maps() const { return maps_; }
  const ValidationReport& validation() const { return report_; }
  bool all_affine() const;

  friend bool operator==(const IFSystem& a, const IFSystem& b) { return a.maps_ == b.maps_; }

 private:
  std::vector<ContractionMap> maps_;
  ValidationReport report_;
};

ValidationReport validate_system(const IFSystem& system);

/// The reflected pair (x/r, 1 - x/r).
IFSystem make_flip_system(const Rational& r);
/// The translated pair (x/r, x/r + (r-1)/r).
IFSystem make_cantor_system(const Rational& r);

/// Probability vector with every entry in (0, 1).
class WeightVector {
 public:
  /// Throws std::invalid_argument unless each weight lies in (0, 1) and the
  /// weights sum to 1 within 1e-12.
  WeightVector(std::vector<Rational> weights);  // NOLINT(google-explicit-constructor)
  WeightVector(std::initializer_list<Rational> weights) : WeightVector(std::vector<Rational>(weights)) {}
  static WeightVector from_doubles(std::span<const double> weights);

  std::size_t size() const { return exact_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const Rational& exact(std::size_t i) const { return exact_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<const Rational> exact_values() const { return exact_; }
  /// Weights in reverse order.
  WeightVector reversed() const;

  std::string str() const;

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.exact_ == b.exact_; }

 private:
  std::vector<Rational> exact_;
  std::vector<double> values_;
};

enum class Dominance { non_negative, non_positive, both, neither };

std::string_view to_string(Dominance dominance);

/// Sign pattern of the partial sums sum_{i<=m} (p_i - q_i), m = 1..k, in
/// exact arithmetic. Throws std::invalid_argument on length mismatch.
Dominance check_weight_dominance(const WeightVector& p, const WeightVector& q);

/// A finite word over {1, ..., k}.
class Word {
 public:
  Word() = default;
  /// Throws std::invalid_argument on a zero symbol.
  Word(std::vector<std::uint8_t> symbols);  // NOLINT(google-explicit-constructor)
  Word(std::initializer_list<std::uint8_t> symbols) : Word(std::vector<std::uint8_t>(symbols)) {}
  /// "1221" -> (1,2,2,1). Symbols are single digits 1-9.
  static Word parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const std::uint8_t> symbols() const { return symbols_; }
  std::size_t count(std::uint8_t symbol) const;
  bool is_prefix_of(const Word& other) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> symbols_;
};

/// f_w[0, 1] with f_w = f_{w_1} o ... o f_{w_n}, endpoints sorted.
/// Throws std::invalid_argument if a symbol exceeds the number of maps.
Interval cylinder_interval(const IFSystem& system, const Word& word);

}  // namespace ifsot
