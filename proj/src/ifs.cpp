#include "ifsot/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifsot {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

double eval_family(MapFamily family, double coefficient, double offset, double x) noexcept {
  if (family == MapFamily::affine) return coefficient * x + offset;
  return coefficient * std::sin(kQuarterPi * x) + offset;
}

}  // namespace

ContractionMap::ContractionMap(MapFamily family, Rational coefficient, Rational offset)
    : family_(family),
      coefficient_(std::move(coefficient)),
      offset_(std::move(offset)),
      coefficient_d_(coefficient_.to_double()),
      offset_d_(offset_.to_double()) {
  if (coefficient_.is_zero()) throw std::invalid_argument("contraction must be strictly monotone");
  lipschitz_ = family_ == MapFamily::affine ? std::abs(coefficient_d_) : std::abs(coefficient_d_) * kQuarterPi;
  if (!(lipschitz_ < 1.0)) throw std::invalid_argument("not a strict contraction: " + str());
  const double at0 = apply(0.0);
  const double at1 = apply(1.0);
  for (double y : {at0, at1}) {
    if (y < -kEndpointSlack || y > 1.0 + kEndpointSlack) {
      throw std::invalid_argument("map does not send [0,1] into [0,1]: " + str());
    }
  }
}

ContractionMap ContractionMap::affine(Rational slope, Rational intercept) {
  return ContractionMap(MapFamily::affine, std::move(slope), std::move(intercept));
}

ContractionMap ContractionMap::quarter_sine(Rational scale, Rational offset) {
  return ContractionMap(MapFamily::quarter_sine, std::move(scale), std::move(offset));
}

double ContractionMap::apply(double x) const noexcept { return eval_family(family_, coefficient_d_, offset_d_, x); }

std::string ContractionMap::str() const {
  return std::string(family_ == MapFamily::affine ? "affine " : "qsine ") + coefficient_.str() + " " + offset_.str();
}

double evaluate_map(const ContractionMap& map, double x) {
  if (!(x >= -kEndpointSlack && x <= 1.0 + kEndpointSlack)) {
    throw std::domain_error("map argument outside [0,1]: " + std::to_string(x));
  }
  return map.apply(std::clamp(x, 0.0, 1.0));
}

IFSystem::IFSystem(std::vector<ContractionMap> maps) : maps_(std::move(maps)) {
  if (maps_.size() < 2) throw std::invalid_argument("an IFS needs at least two maps");
  report_ = validate_system(*this);
}

bool IFSystem::all_affine() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const ContractionMap& m) { return m.is_affine(); });
}

ValidationReport validate_system(const IFSystem& system) {
  ValidationReport report;
  const std::size_t k = system.size();

  report.ordering_ok = true;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (system[i].image().hi > system[i + 1].image().hi + kEndpointSlack) report.ordering_ok = false;
  }

  report.disjoint_open_images = true;
  report.disjoint_closed_images = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const Interval a = system[i].image();
      const Interval b = system[j].image();
      const double overlap = std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
      if (overlap > kEndpointSlack) report.disjoint_open_images = false;
      if (overlap >= -kEndpointSlack) report.disjoint_closed_images = false;
    }
  }

  report.all_positive = std::all_of(system.maps().begin(), system.maps().end(),
                                    [](const ContractionMap& m) { return m.sign() > 0; });
  return report;
}

IFSystem make_flip_system(const Rational& r) {
  const Rational q = Rational(1) / r;
  return IFSystem{ContractionMap::affine(q, 0), ContractionMap::affine(-q, 1)};
}

IFSystem make_cantor_system(const Rational& r) {
  const Rational q = Rational(1) / r;
  return IFSystem{ContractionMap::affine(q, 0), ContractionMap::affine(q, Rational(1) - q)};
}

WeightVector::WeightVector(std::vector<Rational> weights) : exact_(std::move(weights)) {
  if (exact_.empty()) throw std::invalid_argument("empty weight vector");
  double sum = 0.0;
  values_.reserve(exact_.size());
  for (const Rational& w : exact_) {
    if (w.sign() <= 0 || w >= Rational(1)) throw std::invalid_argument("weight outside (0,1): " + w.str());
    values_.push_back(w.to_double());
    sum += values_.back();
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights do not sum to 1: " + str());
}

WeightVector WeightVector::from_doubles(std::span<const double> weights) {
  std::vector<Rational> exact;
  exact.reserve(weights.size());
  for (double w : weights) exact.push_back(Rational::from_double(w));
  return WeightVector(std::move(exact));
}

WeightVector WeightVector::reversed() const { return WeightVector(std::vector<Rational>(exact_.rbegin(), exact_.rend())); }

std::string WeightVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < exact_.size(); ++i) {
    if (i) out += ", ";
    out += exact_[i].str();
  }
  return out + ")";
}

std::string_view to_string(Dominance dominance) {
  switch (dominance) {
    case Dominance::non_negative: return "non_negative";
    case Dominance::non_positive: return "non_positive";
    case Dominance::both: return "both";
    case Dominance::neither: return "neither";
  }
  return "unknown";
}

Dominance check_weight_dominance(const WeightVector& p, const WeightVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("weight vectors differ in length");
  bool any_positive = false;
  bool any_negative = false;
  Rational partial;
  for (std::size_t i = 0; i < p.size(); ++i) {
    partial += p.exact(i) - q.exact(i);
    any_positive |= partial.sign() > 0;
    any_negative |= partial.sign() < 0;
  }
  if (any_positive && any_negative) return Dominance::neither;
  if (any_positive) return Dominance::non_negative;
  if (any_negative) return Dominance::non_positive;
  return Dominance::both;
}

Word::Word(std::vector<std::uint8_t> symbols) : symbols_(std::move(symbols)) {
  for (auto s : symbols_) {
    if (s == 0) throw std::invalid_argument("word symbols start at 1");
  }
}

Word Word::parse(std::string_view text) {
  std::vector<std::uint8_t> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad word symbol '" + std::string(1, c) + "'");
    symbols.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(symbols));
}

std::size_t Word::count(std::uint8_t symbol) const {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), symbol));
}

bool Word::is_prefix_of(const Word& other) const {
  return size() <= other.size() && std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string Word::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) out.push_back(static_cast<char>('0' + s));
  return out;
}

Interval cylinder_interval(const IFSystem& system, const Word& word) {
  double a = 0.0;
  double b = 1.0;
  for (auto it = word.symbols().rbegin(); it != word.symbols().rend(); ++it) {
    if (*it > system.size()) throw std::invalid_argument("word symbol exceeds number of maps");
    const ContractionMap& f = system[*it - 1];
    a = f.apply(a);
    b = f.apply(b);
  }
  return Interval::hull(a, b);
}

}  // namespace ifsot
