#include <gtest/gtest.h>

#include "subperm/verify/suite.hpp"

using namespace subperm;
using namespace subperm::verify;

namespace {

MomentCache& shared_cache() {
  static MomentCache cache;
  return cache;
}

} // namespace

TEST(QDifference, MatchesReferencePolynomial) {
  const auto q2 = reference_q2_r2_m5_3();
  for (int n = 8; n <= 14; ++n) EXPECT_EQ(q_difference(n, 2, 5, 3, shared_cache()), q2(n)) << "n=" << n;
  EXPECT_EQ(q_difference(8, 2, 5, 3, shared_cache()), 1440);
}

TEST(QDifference, OrderOneFactorIsDeterministic) {
  for (int n = 3; n <= 9; ++n) EXPECT_EQ(q_difference(n, 2, 1, 3, shared_cache()), 0);
}

TEST(QDifference, AgreesWithNaiveOracle) {
  const ExactRational naive = e1_exact_naive({6, 2, {2, 2}}).value -
                              e1_exact_naive({6, 2, {2}}).value * e1_exact_naive({6, 2, {2}}).value;
  EXPECT_EQ(q_difference(6, 2, 2, 2, shared_cache()), naive);
}

TEST(Reconstruct, ReferenceQ1AndQ2) {
  const auto q = reconstruct_q1_q2(2, 5, 3, NodePolicy{}, shared_cache());
  ASSERT_NE(q.q1.polynomial(), nullptr);
  EXPECT_EQ(*q.q1.polynomial(), reference_q1_r2_m5_3());
  EXPECT_EQ(*q.q2.polynomial(), reference_q2_r2_m5_3());
  EXPECT_TRUE(q.q1.held_out_verified);
  EXPECT_TRUE(q.q2.held_out_verified);
  EXPECT_EQ(q.q1.nodes_used.front(), 10);
  EXPECT_EQ(q.q1.held_out.size(), 2u);
  EXPECT_EQ(q.q2.degree(), 4);
  EXPECT_EQ(q.q2.leading(), make_rational(8, 3));
}

TEST(Reconstruct, ZeroCovarianceForOrderOne) {
  const auto q = reconstruct_q1_q2(2, 1, 3, NodePolicy{}, shared_cache());
  EXPECT_TRUE(q.q2.polynomial()->is_zero());
  EXPECT_FALSE(q.q2.degree().has_value());
}

TEST(Reconstruct, DegreeExamples) {
  auto q = reconstruct_q1_q2(2, 2, 2, NodePolicy{}, shared_cache());
  EXPECT_EQ(q.q2.degree(), 0);
  q = reconstruct_q1_q2(2, 3, 2, NodePolicy{}, shared_cache());
  EXPECT_EQ(q.q2.degree(), 1);
}

TEST(Reconstruct, WrongDegreeHypothesisIsReported) {
  // E_1(perm_3) has degree 3, so two extra nodes cannot fit a quadratic.
  std::vector<Sample> pts;
  for (int n = 5; n <= 9; ++n) pts.push_back({n, shared_cache().single(n, 2, 3)});
  EXPECT_THROW(verify::detail::fit_polynomial(2, {3}, pts, 2), SurplusMismatch);
}

TEST(Reconstruct, SingleMomentPolynomial) {
  const auto res = reconstruct_single(2, 2, NodePolicy{}, shared_cache());
  EXPECT_EQ(*res.polynomial(), PolynomialQ({1, -3, 2}));
}

TEST(Claims, DegreeScan) {
  const auto rep = degree_claim_scan(2, DegreeScanOptions{}, NodePolicy{}, shared_cache());
  EXPECT_EQ(rep.verdict, Verdict::Pass) << to_json(rep).dump();
  EXPECT_EQ(rep.evidence["cases"].size(), 9u);
}

TEST(Claims, LeadingCoefficients) {
  auto rep = leading_coeff_claim(2, 5, 3, NodePolicy{}, shared_cache());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_EQ(rep.evidence["expected_leading"], "16/45");
  EXPECT_EQ(rep.evidence["coefficients"][1]["q1"], "-104/15");
  rep = leading_coeff_claim(1, 2, 2, NodePolicy{}, shared_cache());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_EQ(rep.evidence["expected_leading"], "1/4");
}

TEST(Claims, SeriesMismatch) {
  auto rep = series_mismatch_check(2, 3, NodePolicy{}, shared_cache());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_EQ(rep.evidence["a"]["measured"], "4/3");
  EXPECT_EQ(rep.evidence["b"]["measured"], "-6");
  EXPECT_EQ(rep.evidence["c"]["series"], "20/3");
  EXPECT_TRUE(rep.evidence["c"]["differs"].get<bool>());
  rep = series_mismatch_check(2, 2, NodePolicy{}, shared_cache());
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_FALSE(rep.evidence["c"].contains("differs"));
  EXPECT_EQ(series_mismatch_check(3, 3, NodePolicy{}, shared_cache()).verdict, Verdict::Fail);
}

TEST(Order, E1FourthOrderSlope) {
  const auto est = factorization_order(MeasureKind::E1SumOfPermutations, 2, {2, 2}, {8, 16, 32}, shared_cache());
  EXPECT_EQ(est.target_exponent, -4);
  EXPECT_TRUE(est.pass);
  EXPECT_NEAR(est.measured_slope, -4, 0.35);
}

TEST(Order, DegenerateWhenOrderOnePresent) {
  EXPECT_THROW(factorization_order(MeasureKind::E1SumOfPermutations, 2, {1, 4}, {8, 16, 32}, shared_cache()),
               DegenerateRemainder);
}

TEST(Order, BernoulliFailsAtFirstOrder) {
  const auto est = factorization_order(MeasureKind::EBBernoulli, 2, {2, 2}, {16, 32, 64}, shared_cache());
  EXPECT_EQ(est.target_exponent, -1);
  EXPECT_TRUE(est.pass);
}

TEST(Order, GridValidation) {
  EXPECT_THROW(factorization_order(MeasureKind::E1SumOfPermutations, 2, {2, 2}, {8, 16}, shared_cache()), DomainError);
  EXPECT_THROW(factorization_order(MeasureKind::E1SumOfPermutations, 2, {2, 2}, {8, 8, 16}, shared_cache()),
               DomainError);
  EXPECT_THROW(factorization_order(MeasureKind::E1SumOfPermutations, 2, {2}, {8, 12, 16}, shared_cache()), DomainError);
}

TEST(Order, ZeroToleranceIsInconclusive) {
  const auto est =
      factorization_order(MeasureKind::E1SumOfPermutations, 2, {2, 2}, {8, 16, 32}, shared_cache(), std::nullopt, 0.0);
  EXPECT_EQ(est.verdict(), Verdict::Inconclusive);
}

TEST(Cancellation, SlopeAndRatios) {
  for (const auto& [r, m, grid] : std::vector<std::tuple<int, std::vector<int>, std::vector<long>>>{
           {2, {2, 2}, {10, 20, 40}}, {3, {2, 1}, {9, 18, 36}}, {2, {3, 2}, {10, 20, 40}}}) {
    const auto est = cancellation_check(r, m, grid);
    EXPECT_TRUE(est.pass) << to_json(est).dump();
    for (double ratio : est.ratios) {
      EXPECT_GE(ratio, 2.5);
      EXPECT_LE(ratio, 6.5);
    }
  }
}

TEST(Cancellation, SingleFactorIsExact) {
  for (int n : {6, 12, 24}) {
    const MomentSpec spec{n, 2, {3}};
    EXPECT_EQ(term_II(spec).value, term_I(spec).value);
    EXPECT_EQ(term_III(spec).value, 0);
    EXPECT_EQ(term_IV(spec).value, 0);
  }
  EXPECT_THROW(cancellation_check(2, {3}, {6, 12, 24}), DegenerateRemainder);
}

TEST(FirstOrder, LimitsWithinTolerance) {
  for (const auto& [r, m] : std::vector<std::pair<int, std::vector<int>>>{{2, {2, 2}}, {3, {2, 1}}, {2, {3, 2}}}) {
    const auto rep = first_order_check(r, m, {16, 32, 64});
    EXPECT_EQ(rep.verdict, Verdict::Pass) << to_json(rep).dump();
  }
}

TEST(Richardson, RemovesInversePowers) {
  std::vector<long> grid{8, 16, 32, 64};
  std::vector<ExactRational> values;
  for (long n : grid) values.push_back(3 + ExactRational(5) / n - ExactRational(7) / (n * n) + ExactRational(2) / (n * n * n));
  EXPECT_EQ(richardson_limit(grid, values), 3);
  EXPECT_THROW(richardson_limit({8, 12, 16}, {1, 1, 1}), DomainError);
}

TEST(Slope, RecoversPowerLaw) {
  std::vector<long> grid{10, 20, 40};
  std::vector<ExactRational> values;
  for (long n : grid) values.push_back(ExactRational(5) / (n * n * n));
  EXPECT_NEAR(loglog_slope(grid, values), -3, 1e-12);
  EXPECT_NEAR(successive_ratios(values)[0], 8, 1e-12);
}

TEST(Report, ExitCodes) {
  VerificationReport pass, fail, budget;
  pass.verdict = Verdict::Pass;
  fail.verdict = Verdict::Fail;
  budget.verdict = Verdict::InconclusiveBudget;
  EXPECT_EQ(exit_code({pass, pass}), 0);
  EXPECT_EQ(exit_code({pass, budget}), 2);
  EXPECT_EQ(exit_code({budget, fail}), 1);
  EXPECT_EQ(to_json(pass)["verdict"], "pass");
  EXPECT_FALSE(to_json(pass).contains("runtime_seconds"));
  EXPECT_TRUE(to_json(pass, true).contains("runtime_seconds"));
}

TEST(Suite, RejectsUnknownName) { EXPECT_THROW(run_suite("nope", SuiteConfig{}), DomainError); }

TEST(Suite, AppendixAndCancellationPass) {
  for (const char* name : {"appendix", "cancellation", "series"}) {
    const auto reports = run_suite(name, SuiteConfig{});
    EXPECT_EQ(exit_code(reports), 0) << name;
  }
}

TEST(Suite, OneColourFactorizesIdentically) {
  SuiteConfig cfg;
  cfg.factorization = {{MeasureKind::E1SumOfPermutations, 1, {1, 3}, {6, 8, 10}, std::nullopt},
                       {MeasureKind::E1SumOfPermutations, 1, {2, 3}, {6, 8, 10}, std::nullopt}};
  const auto reports = run_suite("factorization", cfg);
  ASSERT_EQ(reports.size(), 2u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_TRUE(r.evidence["identically_factorizing"].get<bool>());
  }
}

TEST(Suite, ZeroToleranceMakesOrderChecksInconclusive) {
  SuiteConfig cfg;
  cfg.slope_tolerance = 0;
  const auto reports = run_suite("cancellation", cfg);
  bool any_inconclusive = false;
  for (const auto& r : reports)
    if (r.claim_id.rfind("cancellation", 0) == 0) {
      EXPECT_EQ(r.verdict, Verdict::Inconclusive);
      any_inconclusive = true;
    }
  EXPECT_TRUE(any_inconclusive);
  EXPECT_EQ(exit_code(reports), 2);
}

TEST(Suite, BudgetExhaustionIsInconclusive) {
  SuiteConfig cfg;
  cfg.factorization = {{MeasureKind::E1SumOfPermutations, 3, {2, 2}, {8, 10, 12}, std::nullopt}};
  const auto reports = run_suite("factorization", cfg);
  EXPECT_EQ(reports.front().verdict, Verdict::InconclusiveBudget);
  EXPECT_EQ(exit_code(reports), 2);
}

TEST(Suite, DeterministicSerialization) {
  SuiteConfig cfg;
  cfg.mc_specs = 4;
  cfg.mc_samples = 500;
  const auto a = run_suite("oracles", cfg);
  cfg.oracle.threads = 3;
  cfg.jobs = 2;
  const auto b = run_suite("oracles", cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
}
