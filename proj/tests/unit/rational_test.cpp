#include <gtest/gtest.h>

#include <sstream>

#include "frontier/errors.hpp"
#include "frontier/rational.hpp"

namespace frontier {
namespace {

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-6/8"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("+5"), Rational(5));
  EXPECT_EQ(Rational::parse("  -11 "), Rational(-11));
  EXPECT_EQ(Rational::parse("0/7"), Rational(0));
}

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
  EXPECT_EQ(Rational::parse("-1.25"), Rational(-5, 4));
  EXPECT_EQ(Rational::parse("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(Rational::parse("1E2"), Rational(100));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3."), Rational(3));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "--1", "1e", "1/-2", "0x10", "1 2"}) {
    EXPECT_THROW(Rational::parse(bad), InputError) << bad;
  }
}

TEST(Rational, CanonicalString) {
  EXPECT_EQ(Rational(4, 8).str(), "1/2");
  EXPECT_EQ(Rational(-10, 5).str(), "-2");
  EXPECT_EQ(Rational(0, 3).str(), "0");
  std::ostringstream os;
  os << Rational(7, -21);
  EXPECT_EQ(os.str(), "-1/3");
}

TEST(Rational, ArithmeticAndOrdering) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_LT(b, a);
  EXPECT_EQ(abs(Rational(-2, 7)), Rational(2, 7));
  EXPECT_EQ(positive_part(Rational(-1)), Rational(0));
  EXPECT_EQ(positive_part(Rational(3)), Rational(3));
  EXPECT_THROW(a / Rational(0), InputError);
  EXPECT_THROW(Rational(1, 0), InputError);
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational(-3, 9).sign(), -1);
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}

}  // namespace
}  // namespace frontier
