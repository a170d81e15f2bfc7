#include <gtest/gtest.h>

#include <random>

#include "subperm/arith/combinatorics.hpp"
#include "subperm/arith/polynomial.hpp"

using namespace subperm;

TEST(Factorial, SmallValues) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(1), 1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(factorial(25).get_str(), "15511210043330985984000000");
  EXPECT_THROW(factorial(-1), DomainError);
}

TEST(Binomial, RangeAndSymmetry) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(3, 5), 0);
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), binomial(n, n - k));
  EXPECT_EQ(binomial(60, 30).get_str(), "118264581564861424");
}

TEST(FallingFactorial, MatchesRatio) {
  EXPECT_EQ(falling_factorial(7, 3), 210);
  EXPECT_EQ(falling_factorial(7, 0), 1);
  EXPECT_EQ(falling_factorial(3, 5), 0);
}

TEST(Compositions, OrderAndCount) {
  std::vector<std::vector<int>> seen;
  for (const auto& c : compositions(3, 2)) seen.push_back(c.parts);
  EXPECT_EQ(seen, (std::vector<std::vector<int>>{{3, 0}, {2, 1}, {1, 2}, {0, 3}}));

  for (int total = 0; total <= 7; ++total) {
    for (int parts = 1; parts <= 4; ++parts) {
      long count = 0;
      for (const auto& c : compositions(total, parts)) {
        int sum = 0;
        for (int p : c.parts) {
          EXPECT_GE(p, 0);
          sum += p;
        }
        EXPECT_EQ(sum, total);
        EXPECT_EQ(c.total, total);
        ++count;
      }
      EXPECT_EQ(BigInt(count), compositions(total, parts).count());
    }
  }
}

TEST(Compositions, SinglePartAndZeroTotal) {
  long count = 0;
  for (const auto& c : compositions(4, 1)) {
    EXPECT_EQ(c.parts, std::vector<int>{4});
    ++count;
  }
  EXPECT_EQ(count, 1);
  count = 0;
  for (const auto& c : compositions(0, 3)) {
    EXPECT_EQ(c.parts, (std::vector<int>{0, 0, 0}));
    ++count;
  }
  EXPECT_EQ(count, 1);
  EXPECT_THROW(compositions(2, 0), DomainError);
}

TEST(Multinomial, SumsToPowerOfParts) {
  // sum over compositions of m!/prod c_i! = r^m
  for (int m = 0; m <= 8; ++m)
    for (int r = 1; r <= 4; ++r) {
      BigInt sum(0);
      for (const auto& c : compositions(m, r)) sum += multinomial(c);
      BigInt expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(m));
      EXPECT_EQ(sum, expected);
    }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_EQ(to_string(make_rational(10, -4)), "-5/2");
  EXPECT_THROW(make_rational(1, 0), DomainError);
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("abc"), DomainError);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  auto draw = [&] { return make_rational(num(rng), den(rng)); };
  for (int i = 0; i < 500; ++i) {
    const ExactRational a = draw(), b = draw(), c = draw();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, 0);
    if (a != 0) EXPECT_EQ(a * (1 / a), 1);
    EXPECT_EQ(parse_rational(to_string(a)), a);
  }
}

TEST(Polynomial, ArithmeticAndEval) {
  const PolynomialQ p({1, 2, 3});  // 1 + 2x + 3x^2
  const PolynomialQ q({-1, 1});    // x - 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(2), 17);
  EXPECT_EQ((p * q).degree(), 3);
  EXPECT_EQ((p * q)(5), p(5) * q(5));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(PolynomialQ({0, 0}).degree(), -1);
}

TEST(Interpolation, RecoversCubic) {
  const PolynomialQ truth({make_rational(7, 3), -2, 0, make_rational(1, 5)});
  std::vector<Sample> pts;
  for (long n = 4; n <= 9; ++n) pts.push_back({n, truth(n)});
  EXPECT_EQ(interpolate_polynomial(pts, 3), truth);
}

TEST(Interpolation, SurplusMismatchOnWrongDegree) {
  const PolynomialQ truth({1, 0, 0, 1});
  std::vector<Sample> pts;
  for (long n = 1; n <= 6; ++n) pts.push_back({n, truth(n)});
  EXPECT_THROW(interpolate_polynomial(pts, 2), SurplusMismatch);
}

TEST(Interpolation, RejectsBadInput) {
  std::vector<Sample> pts{{1, 1}, {1, 2}};
  EXPECT_THROW(interpolate_polynomial(pts, 1), DomainError);
  EXPECT_THROW(interpolate_polynomial(pts, 4), DomainError);
  EXPECT_THROW(interpolate_polynomial(pts, -1), DomainError);
}

TEST(RationalReconstruction, RecoversQuotient) {
  const PolynomialQ num({1, 0, 1});  // n^2 + 1
  const PolynomialQ den({3, 1});     // n + 3
  std::vector<Sample> pts;
  for (long n = 1; n <= 8; ++n) pts.push_back({n, num(n) / den(n)});
  const auto f = reconstruct_rational(pts, 4, 3);
  EXPECT_EQ(f.numerator(), num);
  EXPECT_EQ(f.denominator(), den);
  EXPECT_EQ(f.asymptotic_degree(), 1);
  EXPECT_EQ(f(100), num(100) / den(100));
}

TEST(RationalReconstruction, PrefersPolynomial) {
  const PolynomialQ truth({2, -1, 1});
  std::vector<Sample> pts;
  for (long n = 0; n <= 6; ++n) pts.push_back({n, truth(n)});
  const auto f = reconstruct_rational(pts, 4, 3);
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f.numerator(), truth);
}

TEST(RationalReconstruction, NoConsistentModel) {
  std::vector<Sample> pts;
  for (long n = 1; n <= 6; ++n) pts.push_back({n, ExactRational(factorial(n))});
  EXPECT_THROW(reconstruct_rational(pts, 1, 1), NoConsistentModel);
}
