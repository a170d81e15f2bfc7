#include <gtest/gtest.h>

#include <set>

#include "subperm/ensembles/bernoulli.hpp"
#include "subperm/ensembles/oracles.hpp"
#include "subperm/ensembles/sampling.hpp"

using namespace subperm;

TEST(SplitMix64, Reproducible) {
  auto a = SplitMix64::stream(42, 7), b = SplitMix64::stream(42, 7), c = SplitMix64::stream(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(SplitMix64, BoundedDrawsAreInRangeAndRoughlyUniform) {
  auto rng = SplitMix64::stream(1, 0);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) {
    const auto v = rng.below(6);
    ASSERT_LT(v, 6u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(RandomPermutation, AllPermutationsAppear) {
  auto rng = SplitMix64::stream(9, 0);
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < 24000; ++i) ++counts[random_permutation(4, rng)];
  EXPECT_EQ(counts.size(), 24u);
  for (const auto& [perm, c] : counts) EXPECT_NEAR(c, 1000, 150);
}

TEST(Sample, E1RowAndColumnSums) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto a = sample(MeasureKind::E1SumOfPermutations, {5, 2, {1}}, 11, i);
    EXPECT_TRUE(a.is_regular(2));
    const auto p = sample(MeasureKind::E1SumOfPermutations, {5, 1, {1}}, 11, i);
    EXPECT_TRUE(p.is_regular(1));
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) EXPECT_LE(p(r, c), 1);
  }
}

TEST(Sample, BernoulliEntriesAreBits) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto a = sample(MeasureKind::EBBernoulli, {5, 2, {1}}, 3, i);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) EXPECT_TRUE(a(r, c) == 0 || a(r, c) == 1);
  }
}

TEST(Sample, DeterministicInSeedAndIndex) {
  const MomentSpec spec{6, 3, {2}};
  for (std::uint64_t i = 0; i < 10; ++i)
    EXPECT_EQ(sample(MeasureKind::E1SumOfPermutations, spec, 5, i).entries(),
              sample(MeasureKind::E1SumOfPermutations, spec, 5, i).entries());
}

TEST(Sample, UniformRegularUnsupported) {
  EXPECT_THROW(sample(MeasureKind::EUniformRegular01, {5, 2, {1}}, 1), UnsupportedMeasure);
  EXPECT_THROW(monte_carlo_moment(MeasureKind::EUniformRegular01, {5, 2, {1}}, 10, 1), UnsupportedMeasure);
}

TEST(MonteCarlo, DeterministicOrderOne) {
  const auto est = monte_carlo_moment(MeasureKind::E1SumOfPermutations, {6, 2, {1}}, 1000, 5);
  EXPECT_EQ(est.mean, 12.0);
  EXPECT_EQ(est.std_error, 0.0);
  EXPECT_EQ(est.samples, 1000u);
}

TEST(MonteCarlo, E1WithinFourSigma) {
  const auto est = monte_carlo_moment(MeasureKind::E1SumOfPermutations, {8, 2, {3}}, 100000, 7);
  const double exact = to_double(e1_exact({8, 2, {3}}).value);
  EXPECT_LE(std::fabs(est.mean - exact), 4 * est.std_error);
}

TEST(MonteCarlo, BernoulliWithinFourSigma) {
  const auto est = monte_carlo_moment(MeasureKind::EBBernoulli, {8, 2, {2}}, 100000, 7);
  const double exact = to_double(eb_expectation_single(8, 2, 2));
  EXPECT_LE(std::fabs(est.mean - exact), 4 * est.std_error);
  const auto pair = monte_carlo_moment(MeasureKind::EBBernoulli, {4, 2, {1, 1}}, 50000, 3);
  EXPECT_LE(std::fabs(pair.mean - to_double(eb_product_exact_tiny(4, 2, 1, 1))), 4 * pair.std_error);
}

TEST(MonteCarlo, ThreadCountIndependent) {
  const MomentSpec spec{7, 2, {2, 3}};
  const auto one = monte_carlo_moment(MeasureKind::E1SumOfPermutations, spec, 5000, 99, 1);
  const auto four = monte_carlo_moment(MeasureKind::E1SumOfPermutations, spec, 5000, 99, 4);
  EXPECT_EQ(one.mean, four.mean);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(MonteCarlo, NeedsTwoSamples) {
  EXPECT_THROW(monte_carlo_moment(MeasureKind::E1SumOfPermutations, {4, 2, {1}}, 1, 1), DomainError);
}
