#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <string_view>
#include <vector>

#include "subperm/arith/combinatorics.hpp"
#include "subperm/ensembles/matrix.hpp"

namespace subperm {

// Row k holds the colour split (m_{k,1}, ..., m_{k,r}) of subterm k.
using CompositionMatrix = std::vector<Composition>;

enum class TermLabel { I, II, III, IV };

inline std::string_view label_name(TermLabel t) {
  switch (t) {
  case TermLabel::I: return "I";
  case TermLabel::II: return "II";
  case TermLabel::III: return "III";
  case TermLabel::IV: return "IV";
  }
  return "?";
}

struct TermValue {
  TermLabel label;
  ExactRational value;
  MomentSpec spec;
  // False when the term has no pair of subterms to act on (N < 2); value is 0.
  bool applicable = true;
};

namespace detail {

// k! with the convention that a negative argument contributes weight 0.
inline BigInt factorial_or_zero(long k) { return k < 0 ? BigInt(0) : factorial(k); }

// Calls fn(rows) for every choice of one composition of sizes[k] into r parts
// per k; the last row varies fastest.
inline void for_each_composition_matrix(const std::vector<int>& sizes, int r,
                                        const std::function<void(const CompositionMatrix&)>& fn) {
  CompositionMatrix rows(sizes.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == sizes.size()) {
      fn(rows);
      return;
    }
    for (const auto& c : compositions(sizes[k], r)) {
      rows[k] = c;
      rec(k + 1);
    }
  };
  rec(0);
}

// T_c = sum_t m_{t,c}
inline std::vector<int> colour_totals(const CompositionMatrix& rows, int r) {
  std::vector<int> totals(static_cast<std::size_t>(r), 0);
  for (const auto& row : rows)
    for (int c = 0; c < r; ++c) totals[static_cast<std::size_t>(c)] += row[static_cast<std::size_t>(c)];
  return totals;
}

inline BigInt factorial_power(int n, int r) {
  BigInt d;
  mpz_pow_ui(d.get_mpz_t(), factorial(n).get_mpz_t(), static_cast<unsigned long>(r));
  return d;
}

inline void validate_term_spec(const MomentSpec& spec) {
  spec.validate();
  if (spec.n < 1) throw DomainError("terms need n >= 1");
}

// Kernel shared by II, III and IV: the N subterms occupy disjoint rows and
// columns, subterm k drawing its entries from the rows and columns left by
// subterms before it (taken_before[k] of them are already taken), with sizes[k]
// fresh entries of which the colour split is rows[k].
inline BigInt disjoint_placements(int n, const std::vector<int>& sizes, const std::vector<int>& taken_before,
                                  const CompositionMatrix& rows) {
  BigInt w(1);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const BigInt b = binomial(n - taken_before[k], sizes[k]);
    if (b == 0) return 0;
    w *= b * b;
    w *= factorial(sizes[k]);
    w *= multinomial(rows[k]);
  }
  return w;
}

} // namespace detail

// Product of the single-factor E_1 moments:
// prod_k sum_{splits of m_k} (n!)^{-r} C(n,m_k)^2 m_k! (m_k! / prod_i m_{k,i}!) prod_i (n - m_{k,i})!
inline TermValue term_I(const MomentSpec& spec) {
  detail::validate_term_spec(spec);
  const int n = spec.n, r = spec.r;
  const BigInt denom = detail::factorial_power(n, r);
  ExactRational product(1);
  for (int mk : spec.m) {
    BigInt sum(0);
    const BigInt b = binomial(n, mk);
    for (const auto& c : compositions(mk, r)) {
      BigInt w = b * b * factorial(mk) * multinomial(c);
      for (int part : c.parts) w *= detail::factorial_or_zero(n - part);
      sum += w;
    }
    product *= make_rational(sum, denom);
  }
  return {TermLabel::I, product, spec, true};
}

// Pure class-1 multiterms: every entry of the product in its own row and
// column.
inline TermValue term_II(const MomentSpec& spec) {
  detail::validate_term_spec(spec);
  const int n = spec.n, r = spec.r;
  std::vector<int> taken(spec.m.size(), 0);
  for (std::size_t k = 1; k < spec.m.size(); ++k) taken[k] = taken[k - 1] + spec.m[k - 1];

  BigInt sum(0);
  detail::for_each_composition_matrix(spec.m, r, [&](const CompositionMatrix& rows) {
    BigInt w = detail::disjoint_placements(n, spec.m, taken, rows);
    if (w == 0) return;
    for (int t : detail::colour_totals(rows, r)) w *= detail::factorial_or_zero(n - t);
    sum += w;
  });
  return {TermLabel::II, make_rational(sum, detail::factorial_power(n, r)), spec, true};
}

namespace detail {

// Shared enumeration for III and IV. For each pair i < j, subterm j keeps
// m_j - 1 free entries; its remaining entry is tied to an entry of subterm i.
// visit(i, j, rows, placements) receives the colour splits (row j summing to
// m_j - 1) and the placement count of all free entries.
inline void for_each_tied_pair(const MomentSpec& spec,
                               const std::function<void(std::size_t, std::size_t, const CompositionMatrix&,
                                                        const BigInt&)>& visit) {
  const int n = spec.n, r = spec.r;
  const std::size_t count = spec.m.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (spec.m[j] == 0 || spec.m[i] == 0) continue;
      std::vector<int> sizes(spec.m);
      sizes[j] -= 1;
      // Subterms after j see one more free row and column, since the tied
      // entry of j takes none.
      std::vector<int> taken(count, 0);
      for (std::size_t k = 1; k < count; ++k) taken[k] = taken[k - 1] + spec.m[k - 1];
      for (std::size_t k = j + 1; k < count; ++k) taken[k] -= 1;
      for_each_composition_matrix(sizes, r, [&](const CompositionMatrix& rows) {
        const BigInt w = disjoint_placements(n, sizes, taken, rows);
        if (w != 0) visit(i, j, rows, w);
      });
    }
  }
}

} // namespace detail

// A single class-2 entry: the entry of subterm j coincides, in cell and in
// colour s, with one of the m_{i,s} colour-s entries of subterm i. The shared
// cell is counted once in the colour totals.
inline TermValue term_III(const MomentSpec& spec) {
  detail::validate_term_spec(spec);
  const int n = spec.n, r = spec.r;
  if (spec.m.size() < 2) return {TermLabel::III, ExactRational(0), spec, false};
  BigInt sum(0);
  detail::for_each_tied_pair(spec, [&](std::size_t i, std::size_t, const CompositionMatrix& rows, const BigInt& w) {
    BigInt weight = w;
    for (int t : detail::colour_totals(rows, r)) weight *= detail::factorial_or_zero(n - t);
    sum += weight * rows[i].total;  // sum_s m_{i,s} = m_i
  });
  return {TermLabel::III, make_rational(sum, detail::factorial_power(n, r)), spec, true};
}

// A single class-3 or class-4 entry, doubled for the two classes. The entry of
// subterm j, of colour b, shares its row (class 3) with a colour-a entry of
// subterm i and takes a column no other entry uses: n - sum_t m_t + 1 choices.
// Colour b cannot equal a (permutation b would hit one row twice), and the
// entry adds one cell to colour b's total.
inline TermValue term_IV(const MomentSpec& spec) {
  detail::validate_term_spec(spec);
  const int n = spec.n, r = spec.r;
  if (spec.m.size() < 2) return {TermLabel::IV, ExactRational(0), spec, false};
  const long free_lines = static_cast<long>(n) - spec.total_order() + 1;
  BigInt sum(0);
  if (free_lines <= 0 || r < 2)
    return {TermLabel::IV, ExactRational(0), spec, true};
  detail::for_each_tied_pair(spec, [&](std::size_t i, std::size_t, const CompositionMatrix& rows, const BigInt& w) {
    const auto totals = detail::colour_totals(rows, r);
    BigInt base(1);
    for (int t : totals) base *= detail::factorial_or_zero(n - t);
    if (base == 0) return;
    for (int b = 0; b < r; ++b) {
      const int tb = totals[static_cast<std::size_t>(b)];
      if (n - tb - 1 < 0) continue;
      // prod_c (n - T_c - [c = b])! = base / (n - T_b)
      const BigInt colour_weight = base / (n - tb);
      // sum over a != b of m_{i,a}
      const int partners = rows[i].total - rows[i][static_cast<std::size_t>(b)];
      sum += 2 * w * colour_weight * partners * free_lines;
    }
  });
  return {TermLabel::IV, make_rational(sum, detail::factorial_power(n, r)), spec, true};
}

// Exact ratio of the II and I kernels for one colour assignment:
// (n!)^{r(N-1)} prod_k C(n - sum_{t<k} m_t, m_k)^2 / prod_k C(n, m_k)^2
//   * prod_i (n - sum_t m_{t,i})! / prod_k prod_i (n - m_{k,i})!
inline ExactRational kernel_ratio(const std::vector<int>& m, const CompositionMatrix& rows, int n) {
  if (rows.size() != m.size()) throw DomainError("composition matrix needs one row per factor");
  if (rows.empty()) throw DomainError("empty composition matrix");
  const int r = static_cast<int>(rows.front().size());
  BigInt num(1), den(1);
  mpz_pow_ui(num.get_mpz_t(), factorial(n).get_mpz_t(), static_cast<unsigned long>(r) * (m.size() - 1));
  int taken = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const BigInt a = binomial(n - taken, m[k]), b = binomial(n, m[k]);
    num *= a * a;
    den *= b * b;
    taken += m[k];
    for (int part : rows[k].parts) den *= detail::factorial_or_zero(n - part);
  }
  for (int t : detail::colour_totals(rows, r)) num *= detail::factorial_or_zero(n - t);
  if (den == 0) throw DomainError("kernel ratio undefined: n too small for the orders");
  return make_rational(num, den);
}

// First-order exponent alpha of the kernel ratio:
// (1/2n) [ -4 sum_k sum_{t<k} m_t m_k + 2 sum_i sum_k sum_{t<k} m_{t,i} m_{k,i} ]
inline ExactRational alpha_first_order(const std::vector<int>& m, const CompositionMatrix& rows, int n) {
  if (rows.size() != m.size()) throw DomainError("composition matrix needs one row per factor");
  if (n < 1) throw DomainError("alpha needs n >= 1");
  for (std::size_t k = 0; k < m.size(); ++k)
    if (rows[k].total != m[k]) throw DomainError("composition row does not sum to its order");
  long bracket = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    for (std::size_t t = 0; t < k; ++t) {
      bracket -= 4L * m[t] * m[k];
      for (std::size_t c = 0; c < rows[k].size(); ++c) bracket += 2L * rows[t][c] * rows[k][c];
    }
  }
  return make_rational(bracket, 2L * n);
}

} // namespace subperm
