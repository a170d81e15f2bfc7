#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "subperm/arith/combinatorics.hpp"
#include "subperm/ensembles/cycle_types.hpp"
#include "subperm/ensembles/matrix.hpp"
#include "subperm/ensembles/subpermanent.hpp"
#include "subperm/parallel.hpp"

namespace subperm {

struct OracleOptions {
  // Work cap in kernel evaluations: visited matrices times n^2, a proxy for
  // the DP updates spent on each profile.
  std::uint64_t budget = 1'000'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
};

enum class OracleMethod { CycleReduced, Naive, TinyEnum };

inline std::string_view method_name(OracleMethod m) {
  switch (m) {
  case OracleMethod::CycleReduced: return "cycle-reduced";
  case OracleMethod::Naive: return "naive";
  case OracleMethod::TinyEnum: return "tiny-enum";
  }
  return "?";
}

struct OracleResult {
  MomentSpec spec;
  ExactRational value;
  OracleMethod method;
};

// A product moment prod_i perm_{m_i}, given by its orders.
using Monomial = std::vector<int>;

namespace detail {

// Exact running sums of prod_i perm_{m_i}(A) over visited matrices, one per
// monomial. Products and partial sums stay in 128-bit words until they
// overflow, then spill into the big-integer total.
class MonomialSums {
public:
  explicit MonomialSums(const std::vector<Monomial>* monomials)
      : monomials_(monomials), pending_(monomials->size(), 0), total_(monomials->size()) {}

  void add(const std::vector<u128>& profile) {
    for (std::size_t k = 0; k < monomials_->size(); ++k) {
      u128 product = 1;
      bool spilled = false;
      for (int m : (*monomials_)[k]) {
        const u128 f = static_cast<std::size_t>(m) < profile.size() ? profile[static_cast<std::size_t>(m)] : 0;
        if (f == 0) {
          product = 0;
          break;
        }
        if (__builtin_mul_overflow(product, f, &product)) {
          spilled = true;
          break;
        }
      }
      if (spilled) {
        BigInt big(1);
        for (int m : (*monomials_)[k]) big *= to_bigint(profile[static_cast<std::size_t>(m)]);
        total_[k] += big;
        continue;
      }
      if (__builtin_add_overflow(pending_[k], product, &pending_[k])) {
        total_[k] += to_bigint(pending_[k]);
        total_[k] += BigInt(1) << 128;
        pending_[k] = 0;
      }
    }
  }

  void add(const SubpermanentProfile& profile) {
    for (std::size_t k = 0; k < monomials_->size(); ++k) {
      BigInt product(1);
      for (int m : (*monomials_)[k]) {
        if (static_cast<std::size_t>(m) >= profile.size()) {
          product = 0;
          break;
        }
        product *= profile[static_cast<std::size_t>(m)];
      }
      total_[k] += product;
    }
  }

  std::vector<BigInt> totals() const {
    std::vector<BigInt> out(total_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += to_bigint(pending_[k]);
    return out;
  }

private:
  const std::vector<Monomial>* monomials_;
  std::vector<u128> pending_;
  std::vector<BigInt> total_;
};

inline void accumulate_matrix(const IntMatrix& a, bool fits, MonomialSums& sums) {
  if (fits) sums.add(profile_as<u128>(a));
  else sums.add(profile_as<BigInt>(a));
}

// Visits every permutation of 0..n-1, or only those with perm[0] == first
// when first >= 0, in lexicographic order.
template <class Visit>
void for_each_permutation(int n, int first, Visit&& visit) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto tail = perm.begin();
  if (first >= 0) {
    std::rotate(perm.begin(), perm.begin() + first, perm.begin() + first + 1);
    tail = perm.begin() + 1;
  }
  do {
    visit(std::span<const int>(perm));
  } while (std::next_permutation(tail, perm.end()));
}

// Adds P_sigma for every sigma in S_n, independently at each of `levels`
// nesting levels, visiting each resulting matrix once.
inline void enumerate_free_levels(IntMatrix& a, int levels, bool fits, MonomialSums& sums) {
  if (levels == 0) {
    accumulate_matrix(a, fits, sums);
    return;
  }
  for_each_permutation(a.n(), -1, [&](std::span<const int> perm) {
    a.add_permutation(perm);
    enumerate_free_levels(a, levels - 1, fits, sums);
    a.remove_permutation(perm);
  });
}

inline bool regular_fits_u128(int n, int r) { return n * std::log2(1.0 + r) < 126.0; }

inline double factorial_double(int n) { return std::tgamma(n + 1.0); }

inline void check_budget(const char* what, double required, const OracleOptions& options) {
  if (required > static_cast<double>(options.budget)) throw BudgetExceeded(what, required, options.budget);
}

inline void validate_monomials(int n, int r, const std::vector<Monomial>& monomials) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (r < 1) throw DomainError("r must be at least 1");
  if (monomials.empty()) throw DomainError("no moments requested");
  for (const auto& mono : monomials) MomentSpec{n, r, mono}.validate();
}

inline std::vector<ExactRational> normalize(const std::vector<BigInt>& sums, const BigInt& denominator) {
  std::vector<ExactRational> out;
  out.reserve(sums.size());
  for (const auto& s : sums) out.push_back(make_rational(s, denominator));
  return out;
}

} // namespace detail

// Kernel evaluations of e1_exact: n^2 per visited matrix, with 1 matrix for
// r = 1 and p(n) (n!)^(r-2) otherwise.
inline double e1_exact_work(int n, int r) {
  const double per_matrix = static_cast<double>(n) * n;
  if (r <= 1) return per_matrix;
  return per_matrix * static_cast<double>(partition_count(n)) * std::pow(detail::factorial_double(n), r - 2);
}

inline double e1_naive_work(int n, int r) {
  return static_cast<double>(n) * n * std::pow(detail::factorial_double(n), r - 1);
}

// E_1 moments for several monomials from one enumeration.
//
// With sigma_1 fixed to the identity (perm_m is invariant under row
// permutations), E_1 f = (n!)^{-(r-1)} sum over sigma_2..sigma_r of
// f(I + P_2 + ... + P_r). Simultaneous conjugation of sigma_2..sigma_r leaves
// f unchanged, so sigma_2 runs over one representative per cycle type,
// weighted by the class size, while sigma_3..sigma_r stay unrestricted.
inline std::vector<ExactRational> e1_exact_many(int n, int r, const std::vector<Monomial>& monomials,
                                                const OracleOptions& options = {}) {
  detail::validate_monomials(n, r, monomials);
  detail::check_budget("cycle-reduced E1 enumeration", e1_exact_work(n, r), options);
  const bool fits = detail::regular_fits_u128(n, r);

  if (r == 1) {
    detail::MonomialSums sums(&monomials);
    detail::accumulate_matrix(IntMatrix::identity(n), fits, sums);
    return detail::normalize(sums.totals(), BigInt(1));
  }

  const auto types = cycle_types(n);
  const std::size_t per_type = r == 2 ? 1 : static_cast<std::size_t>(n);
  auto partials = parallel_map(types.size() * per_type, options.threads, [&](std::size_t item) {
    const auto& type = types[item / per_type];
    IntMatrix a = IntMatrix::identity(n);
    a.add_permutation(type.representative());
    detail::MonomialSums sums(&monomials);
    if (r == 2) {
      detail::accumulate_matrix(a, fits, sums);
    } else {
      const int first = static_cast<int>(item % per_type);
      detail::for_each_permutation(n, first, [&](std::span<const int> perm) {
        a.add_permutation(perm);
        detail::enumerate_free_levels(a, r - 3, fits, sums);
        a.remove_permutation(perm);
      });
    }
    auto totals = sums.totals();
    for (auto& t : totals) t *= type.class_size;
    return totals;
  });

  std::vector<BigInt> totals(monomials.size());
  for (const auto& part : partials)
    for (std::size_t k = 0; k < totals.size(); ++k) totals[k] += part[k];
  BigInt denominator;
  mpz_pow_ui(denominator.get_mpz_t(), factorial(n).get_mpz_t(), static_cast<unsigned long>(r - 1));
  return detail::normalize(totals, denominator);
}

inline OracleResult e1_exact(const MomentSpec& spec, const OracleOptions& options = {}) {
  spec.validate();
  return {spec, e1_exact_many(spec.n, spec.r, {spec.m}, options).front(), OracleMethod::CycleReduced};
}

// Same expectation with sigma_1 = identity as the only reduction: all
// (n!)^(r-1) tuples of the remaining permutations are visited.
inline std::vector<ExactRational> e1_naive_many(int n, int r, const std::vector<Monomial>& monomials,
                                                const OracleOptions& options = {}) {
  detail::validate_monomials(n, r, monomials);
  detail::check_budget("naive E1 enumeration", e1_naive_work(n, r), options);
  const bool fits = detail::regular_fits_u128(n, r);
  if (r == 1) return e1_exact_many(n, r, monomials, options);

  auto partials = parallel_map(static_cast<std::size_t>(n), options.threads, [&](std::size_t first) {
    IntMatrix a = IntMatrix::identity(n);
    detail::MonomialSums sums(&monomials);
    detail::for_each_permutation(n, static_cast<int>(first), [&](std::span<const int> perm) {
      a.add_permutation(perm);
      detail::enumerate_free_levels(a, r - 2, fits, sums);
      a.remove_permutation(perm);
    });
    return sums.totals();
  });
  std::vector<BigInt> totals(monomials.size());
  for (const auto& part : partials)
    for (std::size_t k = 0; k < totals.size(); ++k) totals[k] += part[k];
  BigInt denominator;
  mpz_pow_ui(denominator.get_mpz_t(), factorial(n).get_mpz_t(), static_cast<unsigned long>(r - 1));
  return detail::normalize(totals, denominator);
}

inline OracleResult e1_exact_naive(const MomentSpec& spec, const OracleOptions& options = {}) {
  spec.validate();
  return {spec, e1_naive_many(spec.n, spec.r, {spec.m}, options).front(), OracleMethod::Naive};
}

struct UniformTinyOptions {
  OracleOptions oracle;
  int max_n = 6;
};

// Uniform average over all n x n 0/1 matrices with every row and column sum
// equal to r. Rows are filled one at a time with r-subsets of the columns that
// still have capacity; a column whose remaining capacity exceeds the number of
// unfilled rows prunes the branch.
inline OracleResult e_uniform_exact_tiny(const MomentSpec& spec, const UniformTinyOptions& options = {}) {
  spec.validate();
  const int n = spec.n, r = spec.r;
  if (n < 1) throw DomainError("n must be at least 1");
  if (r > n) throw InfeasibleEnsemble("no 0/1 matrix has row sums r > n");
  // C(n,r)^n bounds the number of leaves of the row-by-row search.
  const double work = static_cast<double>(n) * n * std::pow(binomial(n, r).get_d(), n);
  if (n > options.max_n)
    throw BudgetExceeded("uniform regular enumeration above n=" + std::to_string(options.max_n), work,
                         options.oracle.budget);
  detail::check_budget("uniform regular enumeration", work, options.oracle);

  std::vector<std::vector<int>> row_choices;
  {
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    std::fill(pick.end() - r, pick.end(), 1);
    do {
      std::vector<int> cols;
      for (int j = 0; j < n; ++j)
        if (pick[static_cast<std::size_t>(j)]) cols.push_back(j);
      row_choices.push_back(std::move(cols));
    } while (std::next_permutation(pick.begin(), pick.end()));
  }

  const std::vector<Monomial> monomials{spec.m};
  const bool fits = detail::regular_fits_u128(n, r);
  // One work item per choice for the first row.
  auto partials = parallel_map(row_choices.size(), options.oracle.threads, [&](std::size_t first) {
    detail::MonomialSums sums(&monomials);
    std::uint64_t count = 0;
    IntMatrix a(n);
    std::vector<int> capacity(static_cast<std::size_t>(n), r);
    auto place = [&](int row, const std::vector<int>& cols, int delta) {
      for (int j : cols) {
        a(row, j) += delta;
        capacity[static_cast<std::size_t>(j)] -= delta;
      }
    };
    std::function<void(int)> fill = [&](int row) {
      if (row == n) {
        detail::accumulate_matrix(a, fits, sums);
        ++count;
        return;
      }
      for (const auto& cols : row_choices) {
        bool ok = true;
        for (int j : cols) ok = ok && capacity[static_cast<std::size_t>(j)] > 0;
        if (!ok) continue;
        place(row, cols, 1);
        const int rows_left = n - row - 1;
        bool feasible = true;
        for (int c : capacity) feasible = feasible && c <= rows_left;
        if (feasible) fill(row + 1);
        place(row, cols, -1);
      }
    };
    place(0, row_choices[first], 1);
    fill(1);
    auto totals = sums.totals();
    totals.push_back(BigInt(static_cast<unsigned long>(count)));
    return totals;
  });

  BigInt total, count;
  for (const auto& part : partials) {
    total += part[0];
    count += part[1];
  }
  return {spec, make_rational(total, count), OracleMethod::TinyEnum};
}

} // namespace subperm
