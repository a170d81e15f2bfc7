#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "subperm/ensembles/matrix.hpp"
#include "subperm/ensembles/oracles.hpp"
#include "subperm/ensembles/subpermanent.hpp"
#include "subperm/parallel.hpp"

namespace subperm {

enum class MeasureKind { E1SumOfPermutations, EUniformRegular01, EBBernoulli };

inline std::string_view measure_name(MeasureKind m) {
  switch (m) {
  case MeasureKind::E1SumOfPermutations: return "e1";
  case MeasureKind::EUniformRegular01: return "e";
  case MeasureKind::EBBernoulli: return "eb";
  }
  return "?";
}

// SplitMix64 (Steele, Lea and Flood). Sample i of a run seeded with s draws
// from the stream whose state starts at mix(s) ^ mix(i + golden), so samples
// are independent of each other and of how they are scheduled.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed) ^ mix(index + kGolden));
  }

  std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, bound), bound >= 1, by Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = next();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<u128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Bernoulli(num/den) with an exact integer threshold.
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

// Fisher-Yates shuffle of the identity.
inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

// Matrix number `index` of the stream seeded by `seed`.
inline IntMatrix sample(MeasureKind measure, const MomentSpec& spec, std::uint64_t seed, std::uint64_t index = 0) {
  spec.validate();
  if (spec.n < 1) throw DomainError("sampling needs n >= 1");
  auto rng = SplitMix64::stream(seed, index);
  switch (measure) {
  case MeasureKind::E1SumOfPermutations: {
    IntMatrix a(spec.n);
    for (int k = 0; k < spec.r; ++k) a.add_permutation(random_permutation(spec.n, rng));
    return a;
  }
  case MeasureKind::EBBernoulli: {
    if (spec.r > spec.n) throw DomainError("Bernoulli ensemble needs r <= n");
    IntMatrix a(spec.n);
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        a(i, j) = rng.bernoulli(static_cast<std::uint64_t>(spec.r), static_cast<std::uint64_t>(spec.n)) ? 1 : 0;
    return a;
  }
  case MeasureKind::EUniformRegular01:
    break;
  }
  throw UnsupportedMeasure("sampling the uniform r-regular 0/1 ensemble is not supported");
}

struct MonteCarloEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

// Sample mean and standard error of prod_i perm_{m_i}(A). Sums of values and
// squares are kept as exact integers, so the estimate is identical for any
// thread count.
inline MonteCarloEstimate monte_carlo_moment(MeasureKind measure, const MomentSpec& spec, std::uint64_t samples,
                                             std::uint64_t seed, unsigned threads = 0) {
  spec.validate();
  if (samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  if (measure == MeasureKind::EUniformRegular01)
    throw UnsupportedMeasure("sampling the uniform r-regular 0/1 ensemble is not supported");
  constexpr std::uint64_t block = 1024;
  const std::size_t blocks = static_cast<std::size_t>((samples + block - 1) / block);
  struct Sums {
    BigInt s1, s2;
  };
  auto partials = parallel_map(blocks, threads, [&](std::size_t b) {
    Sums sums;
    const std::uint64_t begin = b * block, end = std::min<std::uint64_t>(samples, begin + block);
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto profile = subpermanent_profile(sample(measure, spec, seed, i));
      BigInt x(1);
      for (int m : spec.m) x *= static_cast<std::size_t>(m) < profile.size() ? profile[static_cast<std::size_t>(m)] : BigInt(0);
      sums.s1 += x;
      sums.s2 += x * x;
    }
    return sums;
  });
  BigInt s1, s2;
  for (const auto& p : partials) {
    s1 += p.s1;
    s2 += p.s2;
  }
  const ExactRational count(static_cast<unsigned long>(samples));
  const ExactRational mean = ExactRational(s1) / count;
  // Unbiased sample variance, exact until the final conversion.
  const ExactRational var = (ExactRational(s2) - ExactRational(s1) * mean) / (count - 1);
  const double var_d = std::max(0.0, var.get_d());
  return {mean.get_d(), std::sqrt(var_d / static_cast<double>(samples)), samples};
}

} // namespace subperm
