#include "ifsot/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ifsot {

namespace mp = boost::multiprecision;

namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

BigInt pow10(unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= 10;
  return result;
}

// [+-]digits[.digits][e[+-]digits]
mp::cpp_rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt digits = 0;
  int fraction_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad_number(text);

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) bad_number(text);
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(text);
      exponent = exponent * 10 + (c - '0');
      if (exponent > 4000) bad_number(text);
    }
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) bad_number(text);

  const long scale = exponent - fraction_digits;
  mp::cpp_rational value = scale >= 0 ? mp::cpp_rational(digits * pow10(static_cast<unsigned>(scale)))
                                      : mp::cpp_rational(digits, pow10(static_cast<unsigned>(-scale)));
  return negative ? mp::cpp_rational(-value) : value;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(value) {}

Rational::Rational(BigInt numerator, BigInt denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mp::cpp_rational(std::move(numerator), std::move(denominator));
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(text);

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_decimal(text));
  if (text.find('/', slash + 1) != std::string_view::npos) bad_number(text);

  const auto num = parse_decimal(text.substr(0, slash));
  const auto den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(mp::cpp_rational(num / den));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every double.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  mp::cpp_rational result(scaled);
  if (exponent >= 0) {
    result *= mp::cpp_rational(BigInt(1) << exponent);
  } else {
    result /= mp::cpp_rational(BigInt(1) << -exponent);
  }
  return Rational(result);
}

BigInt Rational::numerator() const { return mp::numerator(value_); }
BigInt Rational::denominator() const { return mp::denominator(value_); }

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::str() const {
  const BigInt den = denominator();
  if (den == 1) return numerator().str();
  return numerator().str() + "/" + den.str();
}

bool Rational::is_zero() const { return value_ == 0; }

int Rational::sign() const { return value_.sign(); }

bool Rational::is_integer() const { return denominator() == 1; }

Rational Rational::abs() const { return value_ < 0 ? Rational(mp::cpp_rational(-value_)) : *this; }

Rational Rational::pow(unsigned exponent) const {
  return Rational(mp::cpp_rational(mp::pow(numerator(), exponent), mp::pow(denominator(), exponent)));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mp::cpp_rational(-value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ifsot
