#include "ctxkit/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace ctxkit {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational::Integer parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!is_digits(text)) {
    throw std::invalid_argument("malformed rational: \"" + std::string(whole) + "\"");
  }
  Rational::Integer value{std::string(text)};
  return negative ? Rational::Integer(-value) : value;
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator.is_zero()) throw std::domain_error("rational with zero denominator");
  value_ = Storage(numerator, denominator);  // gmp canonicalizes
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!is_digits(den_text)) throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
  return Rational(num, Integer(std::string(den_text)));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("cannot convert a non-finite double to a rational");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 bits of mantissa are exact as an integer after scaling.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer num(scaled);
  Integer den(1);
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

Rational::Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }
Rational::Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

bool Rational::is_integer() const { return denominator() == 1; }

std::string Rational::str() const { return value_.str(); }

double Rational::to_double() const { return value_.convert_to<double>(); }

Rational Rational::operator-() const { return Rational(Storage(-value_)); }

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

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  const int c = lhs.value_.compare(rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational limit_denominator(const Rational& x, const Rational::Integer& max_denominator) {
  using Integer = Rational::Integer;
  if (max_denominator < 1) throw std::invalid_argument("limit_denominator: max denominator must be >= 1");
  if (x.denominator() <= max_denominator) return x;

  // Continued-fraction convergents p0/q0 -> p1/q1, then compare the last
  // convergent with the best semiconvergent.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = x.numerator();
  Integer d = x.denominator();
  while (true) {
    Integer a = n / d;
    if (n < 0 && a * d != n) a -= 1;  // floor division
    const Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  const Integer k = (max_denominator - q0) / q1;
  const Rational bound1(p0 + k * p1, q0 + k * q1);
  const Rational bound2(p1, q1);
  return abs(bound2 - x) <= abs(bound1 - x) ? bound2 : bound1;
}

RationalVector primitive_integer_scaling(const RationalVector& row) {
  using Integer = Rational::Integer;
  Integer lcm_den(1);
  Integer gcd_num(0);
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (row(i).is_zero()) continue;
    lcm_den = boost::multiprecision::lcm(lcm_den, row(i).denominator());
  }
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (row(i).is_zero()) continue;
    const Integer scaled = row(i).numerator() * (lcm_den / row(i).denominator());
    gcd_num = boost::multiprecision::gcd(gcd_num, boost::multiprecision::abs(scaled));
  }
  if (gcd_num.is_zero()) return row;
  const Rational factor(lcm_den, gcd_num);
  RationalVector out(row.size());
  for (Eigen::Index i = 0; i < row.size(); ++i) out(i) = row(i) * factor;
  return out;
}

}  // namespace ctxkit
