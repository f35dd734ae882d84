#include <gtest/gtest.h>

#include <random>

#include "ctxkit/rational.hpp"
#include "support.hpp"

namespace ctxkit {
namespace {

using testing::q;
using testing::Rng;

Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 30);
  return Rational(Rational::Integer(num(rng)), Rational::Integer(den(rng)));
}

TEST(Rational, ParsesCanonically) {
  EXPECT_EQ(q("6/8").str(), "3/4");
  EXPECT_EQ(q("-6/8").str(), "-3/4");
  EXPECT_EQ(q("4/2").str(), "2");
  EXPECT_EQ(q(" 7 ").str(), "7");
  EXPECT_EQ(q("0/5").str(), "0");
  EXPECT_EQ(q("+1/3"), Rational(1) / Rational(3));
  EXPECT_EQ(q("26/8"), q("13/4"));
}

TEST(Rational, RejectsMalformed) {
  EXPECT_THROW(q(""), std::invalid_argument);
  EXPECT_THROW(q("1/"), std::invalid_argument);
  EXPECT_THROW(q("a/2"), std::invalid_argument);
  EXPECT_THROW(q("1/-2"), std::invalid_argument);
  EXPECT_THROW(q("1.5"), std::invalid_argument);
  EXPECT_THROW(q("1/0"), std::domain_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ArithmeticExamples) {
  EXPECT_EQ(q("1/2") + q("1/3"), q("5/6"));
  EXPECT_EQ(q("1/2") - q("3/4"), q("-1/4"));
  EXPECT_EQ(q("2/3") * q("9/4"), q("3/2"));
  EXPECT_EQ(q("2/3") / q("4/9"), q("3/2"));
  EXPECT_LT(q("1/3"), q("1/2"));
  EXPECT_EQ(abs(q("-5/7")), q("5/7"));
  EXPECT_TRUE(q("8/4").is_integer());
  EXPECT_EQ(q("-3/4").sign(), -1);
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(0.5), q("1/2"));
  EXPECT_EQ(Rational::from_double(-0.375), q("-3/8"));
  EXPECT_EQ(Rational::from_double(0.0), Rational(0));
  EXPECT_EQ(Rational::from_double(0.1).denominator(), Rational::Integer(1) << 55);
  EXPECT_THROW(Rational::from_double(std::nan("")), std::domain_error);
}

TEST(Rational, LimitDenominatorExamples) {
  EXPECT_EQ(limit_denominator(Rational::from_double(0.375), 8), q("3/8"));
  EXPECT_EQ(limit_denominator(Rational::from_double(0.125), 8), q("1/8"));
  EXPECT_EQ(limit_denominator(Rational::from_double(3.141592653589793), 100), q("311/99"));
  EXPECT_EQ(limit_denominator(q("1/3"), 2), q("1/2"));
  EXPECT_THROW(limit_denominator(q("1/3"), 0), std::invalid_argument);
}

TEST(Rational, LimitDenominatorMatchesBruteForce) {
  Rng rng(11);
  std::uniform_int_distribution<int> num(-500, 500);
  std::uniform_int_distribution<int> den(1, 500);
  std::uniform_int_distribution<int> limit(1, 25);
  for (int trial = 0; trial < 300; ++trial) {
    const Rational x(Rational::Integer(num(rng)), Rational::Integer(den(rng)));
    const int d = limit(rng);
    const Rational got = limit_denominator(x, d);
    ASSERT_LE(got.denominator(), d);
    Rational best_distance = abs(got - x);
    for (int qd = 1; qd <= d; ++qd) {
      // nearest numerator for this denominator
      const Rational scaled = x * Rational(qd);
      Rational::Integer floor_p = scaled.numerator() / scaled.denominator();
      if (scaled.sign() < 0 && Rational(floor_p) != scaled) floor_p -= 1;
      for (const auto& p : {floor_p, Rational::Integer(floor_p + 1)}) {
        ASSERT_LE(best_distance, abs(Rational(p, qd) - x)) << x << " limit " << d;
      }
    }
  }
}

TEST(Rational, FieldAxiomsHold) {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a + (-a), Rational(0));
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(Rational, CanonicalFormIsUnique) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = random_rational(rng);
    EXPECT_GT(a.denominator(), 0);
    EXPECT_EQ(boost::multiprecision::gcd(a.numerator(), a.denominator()), 1);
    EXPECT_EQ(Rational::parse(a.str()), a);
    const int k = std::uniform_int_distribution<int>(2, 9)(rng);
    const Rational scaled(a.numerator() * k, a.denominator() * k);
    EXPECT_EQ(scaled.str(), a.str());
  }
}

TEST(Rational, OrderIsTotalAndCompatible) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    EXPECT_TRUE((a < b) + (a == b) + (a > b) == 1);
    if (a <= b) {
      EXPECT_LE(a + c, b + c);
    }
    if (a <= b && c.sign() > 0) {
      EXPECT_LE(a * c, b * c);
    }
  }
}

TEST(Rational, PrimitiveIntegerScaling) {
  const RationalVector row = testing::vec({"1/2", "-3/4", "0", "3/2"});
  EXPECT_EQ(primitive_integer_scaling(row), testing::vec({"2", "-3", "0", "6"}));
  EXPECT_EQ(primitive_integer_scaling(testing::vec({"0", "0"})), testing::vec({"0", "0"}));
  EXPECT_EQ(primitive_integer_scaling(testing::vec({"-4", "6"})), testing::vec({"-2", "3"}));
}

TEST(Rational, DotChecksDimension) {
  EXPECT_EQ(dot(testing::vec({"1/2", "1"}), testing::vec({"2", "1/3"})), q("4/3"));
  EXPECT_THROW(dot(testing::vec({"1"}), testing::vec({"1", "2"})), std::invalid_argument);
}

}  // namespace
}  // namespace ctxkit
