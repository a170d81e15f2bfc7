#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "subperm/arith/combinatorics.hpp"
#include "subperm/ensembles/oracles.hpp"

namespace subperm {

// E_B(perm_m) = C(n,m)^2 m! p^m with p = r/n: each of the C(n,m)^2 m! terms is
// a product of m independent entries.
inline ExactRational eb_expectation_single(int n, int r, int m) {
  if (n < 1 || r < 0 || r > n) throw DomainError("E_B needs n >= 1 and 0 <= r <= n");
  if (m < 0) throw DomainError("sub-permanent order must be non-negative");
  if (m > n) return 0;
  const BigInt b = binomial(n, m);
  return ExactRational(b * b * factorial(m)) * pow(make_rational(r, n), static_cast<unsigned>(m));
}

inline double eb_product_work(int n, int m2) {
  return binomial(n, m2).get_d() * falling_factorial(n, m2).get_d();
}

// E_B(perm_{m1} perm_{m2}) = sum over supports (S1, S2) of p^{|S1 u S2|},
// entries being 0/1. E_B is invariant under row and column permutations, so S1
// is pinned to the first m1 diagonal cells and weighted by C(n,m1)^2 m1!;
// every S2 is then enumerated and binned by |S1 n S2|.
inline ExactRational eb_product_exact_tiny(int n, int r, int m1, int m2, const OracleOptions& options = {}) {
  if (n < 1 || r < 0 || r > n) throw DomainError("E_B needs n >= 1 and 0 <= r <= n");
  if (m1 < 0 || m2 < 0) throw DomainError("sub-permanent orders must be non-negative");
  if (m1 > n || m2 > n) return 0;
  if (m2 == 0) return eb_expectation_single(n, r, m1);
  if (m1 == 0) return eb_expectation_single(n, r, m2);
  detail::check_budget("E_B support-pair enumeration", eb_product_work(n, m2), options);

  std::vector<BigInt> by_overlap(static_cast<std::size_t>(std::min(m1, m2)) + 1);
  std::vector<int> pick(static_cast<std::size_t>(n), 0);
  std::fill(pick.end() - m2, pick.end(), 1);
  std::vector<int> rows, cols(static_cast<std::size_t>(m2));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<long> overlap_counts(by_overlap.size(), 0);
  // rows: every m2-subset; columns: every injective assignment into 0..n-1.
  do {
    rows.clear();
    for (int i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) rows.push_back(i);
    std::fill(overlap_counts.begin(), overlap_counts.end(), 0);
    std::function<void(std::size_t, int)> assign = [&](std::size_t k, int overlap) {
      if (k == rows.size()) {
        ++overlap_counts[static_cast<std::size_t>(overlap)];
        return;
      }
      for (int c = 0; c < n; ++c) {
        if (used[static_cast<std::size_t>(c)]) continue;
        used[static_cast<std::size_t>(c)] = 1;
        const bool hit = c == rows[k] && rows[k] < m1;
        assign(k + 1, overlap + (hit ? 1 : 0));
        used[static_cast<std::size_t>(c)] = 0;
      }
    };
    assign(0, 0);
    for (std::size_t k = 0; k < by_overlap.size(); ++k) by_overlap[k] += overlap_counts[k];
  } while (std::next_permutation(pick.begin(), pick.end()));

  const ExactRational p = make_rational(r, n);
  ExactRational sum(0);
  for (std::size_t k = 0; k < by_overlap.size(); ++k)
    sum += ExactRational(by_overlap[k]) * pow(p, static_cast<unsigned>(m1 + m2 - static_cast<int>(k)));
  const BigInt b1 = binomial(n, m1);
  return sum * ExactRational(b1 * b1 * factorial(m1));
}

} // namespace subperm
