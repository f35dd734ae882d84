#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace ctxkit {

/// Exact rational number over arbitrary-precision integers.
///
/// Values are always kept in lowest terms with a positive denominator, so
/// structural equality is numeric equality. Division by zero throws
/// std::domain_error.
class Rational {
 public:
  using Integer = boost::multiprecision::mpz_int;

  Rational() = default;

  template <std::integral T>
  Rational(T value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(const Integer& value) : value_(value) {}
  Rational(const Integer& numerator, const Integer& denominator);

  /// Parses "p/q", "-p/q" or "p". Throws std::invalid_argument on bad input
  /// and std::domain_error on a zero denominator.
  static Rational parse(std::string_view text);

  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  Integer numerator() const;
  Integer denominator() const;

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const;
  int sign() const { return value_.sign(); }

  /// "p/q" in lowest terms; integers print without a denominator.
  std::string str() const;
  double to_double() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Storage = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                                boost::multiprecision::et_off>;
  explicit Rational(Storage value) : value_(std::move(value)) {}

  Storage value_;
};

Rational abs(const Rational& x);

/// Closest rational with denominator at most max_denominator, chosen among
/// the last continued-fraction convergent and its best semiconvergent.
Rational limit_denominator(const Rational& x, const Rational::Integer& max_denominator);

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Inner product with an explicit dimension check (Eigen only asserts).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar dot(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  if (u.size() != v.size()) {
    throw std::invalid_argument("dot: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
  Scalar sum(0);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u(i) != Scalar(0) && v(i) != Scalar(0)) sum += u(i) * v(i);
  }
  return sum;
}

/// Smallest positive multiple of a rational row that has integer entries
/// with gcd 1. The zero row is returned unchanged.
RationalVector primitive_integer_scaling(const RationalVector& row);

}  // namespace ctxkit

namespace Eigen {

template <>
struct NumTraits<ctxkit::Rational> : GenericNumTraits<ctxkit::Rational> {
  using Real = ctxkit::Rational;
  using NonInteger = ctxkit::Rational;
  using Literal = ctxkit::Rational;
  using Nested = ctxkit::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 20,
    MulCost = 40
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
