#include <gtest/gtest.h>

#include <cmath>

#include "subperm/ensembles/oracles.hpp"
#include "subperm/formulas/appendix.hpp"
#include "subperm/formulas/series.hpp"
#include "subperm/formulas/terms.hpp"

using namespace subperm;

namespace {

Composition comp(std::vector<int> parts) {
  int total = 0;
  for (int p : parts) total += p;
  return {std::move(parts), total};
}

} // namespace

TEST(TermI, TrivialValues) {
  EXPECT_EQ(term_I({4, 1, {2}}).value, 6);
  EXPECT_EQ(term_I({7, 3, {0}}).value, 1);
  EXPECT_EQ(term_I({4, 1, {2}}).label, TermLabel::I);
}

TEST(TermI, EqualsProductOfOracleMoments) {
  for (int n = 2; n <= 8; ++n)
    for (int r = 1; r <= 3; ++r) {
      if (r == 3 && n > 6) continue;
      for (const auto& m : std::vector<std::vector<int>>{{2}, {3}, {2, 1}, {2, 2}, {3, 2}}) {
        ExactRational product(1);
        for (int mk : m) product *= e1_exact({n, r, {mk}}).value;
        EXPECT_EQ(term_I({n, r, m}).value, product) << "n=" << n << " r=" << r;
      }
    }
  EXPECT_EQ(term_I({8, 2, {5, 3}}).value, e1_exact({8, 2, {5}}).value * e1_exact({8, 2, {3}}).value);
}

TEST(TermII, SingleFactorAndEmptyFactor) {
  for (int n = 3; n <= 9; ++n)
    for (int r = 1; r <= 3; ++r) {
      EXPECT_EQ(term_II({n, r, {3}}).value, term_I({n, r, {3}}).value);
      EXPECT_EQ(term_II({n, r, {2, 0}}).value, term_I({n, r, {2}}).value);
    }
}

TEST(TermII, BelowTermIWithFirstOrderGap) {
  std::vector<double> scaled;
  for (int n : {10, 20, 40, 80}) {
    const MomentSpec spec{n, 2, {1, 1}};
    const ExactRational i = term_I(spec).value, ii = term_II(spec).value;
    EXPECT_LT(ii, i);
    scaled.push_back(n * to_double((i - ii) / i));
  }
  for (double s : scaled) EXPECT_NEAR(s, scaled.back(), 0.2);
}

TEST(TermIII, NotApplicableOrZero) {
  const auto single = term_III({6, 2, {3}});
  EXPECT_FALSE(single.applicable);
  EXPECT_EQ(single.value, 0);
  EXPECT_EQ(term_III({6, 2, {3, 0}}).value, 0);
  EXPECT_TRUE(term_III({6, 2, {3, 0}}).applicable);
}

TEST(TermIV, ZeroForOneColourOrOneFactor) {
  EXPECT_EQ(term_IV({8, 1, {2, 2}}).value, 0);
  EXPECT_EQ(term_IV({8, 1, {3, 1, 2}}).value, 0);
  EXPECT_FALSE(term_IV({8, 2, {4}}).applicable);
  EXPECT_EQ(term_IV({8, 2, {4}}).value, 0);
}

TEST(Terms, LimitsForTwoByTwo) {
  // n III/I -> m1 m2 / r = 2 and n IV/I -> 2 (r-1) m1 m2 / r = 4 at r = 2.
  double last3 = 0, last4 = 0;
  for (int n : {50, 100, 200, 400}) {
    const MomentSpec spec{n, 2, {2, 2}};
    const ExactRational i = term_I(spec).value;
    last3 = n * to_double(term_III(spec).value / i);
    last4 = n * to_double(term_IV(spec).value / i);
  }
  EXPECT_NEAR(last3, 2.0, 0.05);
  EXPECT_NEAR(last4, 4.0, 0.1);
}

TEST(Alpha, DirectValues) {
  EXPECT_EQ(alpha_first_order({3}, {comp({2, 1})}, 10), 0);
  EXPECT_EQ(alpha_first_order({1, 1}, {comp({1, 0}), comp({1, 0})}, 7), make_rational(-1, 7));
  EXPECT_EQ(alpha_first_order({1, 1}, {comp({1, 0}), comp({0, 1})}, 7), make_rational(-2, 7));
  EXPECT_THROW(alpha_first_order({2, 1}, {comp({1, 0}), comp({1, 0})}, 7), DomainError);
}

TEST(Alpha, MatchesKernelRatioToSecondOrder) {
  const std::vector<int> m{3, 2};
  for (const auto& row0 : compositions(3, 2)) {
    for (const auto& row1 : compositions(2, 2)) {
      const CompositionMatrix rows{row0, row1};
      std::vector<double> err;
      for (int n : {32, 64, 128, 256}) {
        const double ratio = to_double(kernel_ratio(m, rows, n));
        const double approx = std::exp(to_double(alpha_first_order(m, rows, n)));
        err.push_back(std::fabs(ratio / approx - 1));
      }
      for (std::size_t k = 0; k + 1 < err.size(); ++k) {
        if (err[k + 1] < 1e-12) continue;
        const double ratio = err[k] / err[k + 1];
        EXPECT_GT(ratio, 3.0);
        EXPECT_LT(ratio, 5.0);
      }
    }
  }
}

TEST(Symmetry, ResidualVanishes) {
  EXPECT_EQ(symmetry_identity_residual(6, 2, 3, 1), 0);
  EXPECT_EQ(symmetry_identity_residual(5, 3, 2, 2), 0);
  EXPECT_EQ(symmetry_identity_residual(5, 3, 0, 1), 0);
  for (int n = 1; n <= 10; ++n)
    for (int r = 1; r <= 4; ++r)
      for (int m = 0; m <= 6; ++m)
        for (int j = 1; j <= r; ++j) EXPECT_EQ(symmetry_identity_residual(n, r, m, j), 0);
  EXPECT_THROW(symmetry_identity_residual(5, 2, 2, 3), DomainError);
}

TEST(Series, Coefficients) {
  const auto s = series_coeffs(2, 3);
  EXPECT_EQ(s.a, make_rational(4, 3));
  EXPECT_EQ(s.b, -6);
  EXPECT_EQ(s.c, make_rational(20, 3));
  for (int r = 1; r <= 5; ++r) {
    EXPECT_EQ(series_coeffs(r, 1).b, 0);
    EXPECT_EQ(series_coeffs(r, 1).c, 0);
  }
  EXPECT_EQ(series_coeffs(2, 2).a, 2);
  EXPECT_EQ(series_coeffs(2, 2).b, -3);
  const auto s5 = series_coeffs(2, 5), s3 = series_coeffs(2, 3);
  EXPECT_EQ(s5.a * s3.b + s3.a * s5.b, make_rational(-104, 15));
}

TEST(Identities, ExactForRange) {
  for (auto id : {MultinomialIdentity::A1, MultinomialIdentity::A2, MultinomialIdentity::A3, MultinomialIdentity::A4})
    for (int r = id == MultinomialIdentity::A4 ? 2 : 1; r <= 6; ++r)
      for (int m = 0; m <= 10; ++m) {
        const auto sides = multinomial_identity_check(id, m, r);
        EXPECT_EQ(sides.lhs, sides.rhs) << identity_name(id) << " m=" << m << " r=" << r;
      }
  const auto a1 = multinomial_identity_check(MultinomialIdentity::A1, 3, 2);
  EXPECT_EQ(a1.lhs, make_rational(4, 3));
  const auto a2 = multinomial_identity_check(MultinomialIdentity::A2, 4, 3);
  EXPECT_EQ(a2.rhs, make_rational(4, 3) * make_rational(81, 24));
  EXPECT_THROW(multinomial_identity_check(MultinomialIdentity::A4, 3, 1), DomainError);
}

TEST(Lemma, TelescopingExample) {
  const LemmaInput in({1, -2, 1}, {0, 1, 2}, 10);
  const auto res = stirling_lemma_residual(in);
  EXPECT_NEAR(res.actual, std::log(10.0 / 9.0), 1e-15);
  EXPECT_EQ(res.predicted, make_rational(21, 200));
}

TEST(Lemma, IdenticalTermsCancel) {
  const auto res = stirling_lemma_residual(LemmaInput({1, -1}, {3, 3}, 12));
  EXPECT_EQ(res.actual, 0.0);
  EXPECT_EQ(res.predicted, 0);
}

TEST(Lemma, ResidualFallsAsInverseCube) {
  std::vector<double> residuals;
  for (long n : {10, 20, 40, 80}) residuals.push_back(std::fabs(stirling_lemma_residual(LemmaInput({1, -2, 1}, {0, 1, 2}, n)).residual));
  for (std::size_t k = 0; k + 1 < residuals.size(); ++k) EXPECT_NEAR(residuals[k] / residuals[k + 1], 8.0, 0.5);
}

TEST(Lemma, HypothesisViolated) {
  EXPECT_THROW(LemmaInput({1, 1}, {0, 1}, 10), HypothesisViolated);
  EXPECT_THROW(LemmaInput({1, -1}, {0, 1}, 10), HypothesisViolated);
  EXPECT_THROW(LemmaInput({1, -1}, {3, 3}, 3), DomainError);
}
