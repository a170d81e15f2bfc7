#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subperm/arith/rational.hpp"

namespace subperm {

// Dense polynomial in the single indeterminate n; coeffs[k] multiplies n^k.
class PolynomialQ {
public:
  PolynomialQ() = default;
  explicit PolynomialQ(std::vector<ExactRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static PolynomialQ constant(const ExactRational& c) { return PolynomialQ({c}); }
  static PolynomialQ monomial(const ExactRational& c, std::size_t power) {
    std::vector<ExactRational> v(power + 1);
    v[power] = c;
    return PolynomialQ(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  // Coefficient of n^power; zero beyond the degree.
  ExactRational coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : ExactRational(0);
  }
  ExactRational leading() const { return is_zero() ? ExactRational(0) : coeffs_.back(); }
  const std::vector<ExactRational>& coeffs() const { return coeffs_; }

  ExactRational operator()(const ExactRational& x) const {
    ExactRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  ExactRational operator()(long x) const { return (*this)(ExactRational(x)); }

  PolynomialQ& operator+=(const PolynomialQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  PolynomialQ& operator-=(const PolynomialQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  PolynomialQ& operator*=(const ExactRational& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) { return a += b; }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) { return a -= b; }
  friend PolynomialQ operator*(PolynomialQ a, const ExactRational& c) { return a *= c; }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolynomialQ(std::move(out));
  }
  bool operator==(const PolynomialQ&) const = default;

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<ExactRational> coeffs_;
};

// Ratio of polynomials with a monic denominator.
class RationalFunctionQ {
public:
  RationalFunctionQ(PolynomialQ numerator, PolynomialQ denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    const ExactRational lead = den_.leading();
    if (lead != 1) {
      const ExactRational inv = 1 / lead;
      num_ *= inv;
      den_ *= inv;
    }
  }
  static RationalFunctionQ from_polynomial(PolynomialQ p) {
    return RationalFunctionQ(std::move(p), PolynomialQ::constant(1));
  }

  const PolynomialQ& numerator() const { return num_; }
  const PolynomialQ& denominator() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  ExactRational operator()(const ExactRational& x) const {
    const ExactRational d = den_(x);
    if (d == 0) throw DomainError("rational function evaluated at a pole");
    return num_(x) / d;
  }
  ExactRational operator()(long x) const { return (*this)(ExactRational(x)); }

  // Exponent of the leading term of the expansion at n -> infinity
  // (deg num - deg den); nullopt for the zero function.
  std::optional<int> asymptotic_degree() const {
    if (num_.is_zero()) return std::nullopt;
    return num_.degree() - den_.degree();
  }
  ExactRational asymptotic_leading() const { return num_.leading(); }

private:
  PolynomialQ num_;
  PolynomialQ den_;
};

// A value sampled at an integer node n.
struct Sample {
  long n = 0;
  ExactRational value;
};

// Newton form through the first degree+1 samples, converted to monomial
// coefficients. Every surplus sample must be reproduced exactly.
inline PolynomialQ interpolate_polynomial(std::span<const Sample> points, int degree) {
  if (degree < 0) throw DomainError("interpolation degree must be non-negative");
  const auto needed = static_cast<std::size_t>(degree) + 1;
  if (points.size() < needed)
    throw DomainError("interpolation needs " + std::to_string(needed) + " points, got " +
                      std::to_string(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].n == points[j].n) throw DomainError("interpolation nodes must be distinct");

  std::vector<ExactRational> dd(needed);
  for (std::size_t i = 0; i < needed; ++i) dd[i] = points[i].value;
  for (std::size_t level = 1; level < needed; ++level)
    for (std::size_t i = needed - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / ExactRational(points[i].n - points[i - level].n);

  // Horner on the Newton basis: p = dd0 + (x-x0)(dd1 + (x-x1)(dd2 + ...)).
  PolynomialQ poly = PolynomialQ::constant(dd[needed - 1]);
  for (std::size_t k = needed - 1; k-- > 0;) {
    const PolynomialQ factor({ExactRational(-points[k].n), ExactRational(1)});
    poly = poly * factor + PolynomialQ::constant(dd[k]);
  }

  for (std::size_t i = needed; i < points.size(); ++i) {
    const ExactRational got = poly(points[i].n);
    if (got != points[i].value)
      throw SurplusMismatch("degree-" + std::to_string(degree) + " interpolant predicts " +
                            to_string(got) + " at n=" + std::to_string(points[i].n) +
                            " but the sample is " + to_string(points[i].value));
  }
  return poly;
}

namespace detail {

// Solves the square system in place by fraction-exact Gaussian elimination.
// Returns nullopt when the matrix is singular.
inline std::optional<std::vector<ExactRational>>
solve_exact(std::vector<std::vector<ExactRational>> a, std::vector<ExactRational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const ExactRational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline std::optional<RationalFunctionQ> fit_rational(std::span<const Sample> points, int num_deg,
                                                     int den_deg) {
  // num(x) - y * (den(x) - x^den_deg) = y * x^den_deg, den monic.
  const auto unknowns = static_cast<std::size_t>(num_deg + 1 + den_deg);
  std::vector<std::vector<ExactRational>> a(unknowns, std::vector<ExactRational>(unknowns));
  std::vector<ExactRational> b(unknowns);
  for (std::size_t row = 0; row < unknowns; ++row) {
    const ExactRational x(points[row].n);
    const ExactRational& y = points[row].value;
    ExactRational xp(1);
    for (int k = 0; k <= num_deg; ++k, xp *= x) a[row][static_cast<std::size_t>(k)] = xp;
    xp = 1;
    for (int k = 0; k < den_deg; ++k, xp *= x)
      a[row][static_cast<std::size_t>(num_deg + 1 + k)] = -y * xp;
    b[row] = y * xp;
  }
  auto sol = solve_exact(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  std::vector<ExactRational> num(sol->begin(), sol->begin() + num_deg + 1);
  std::vector<ExactRational> den(sol->begin() + num_deg + 1, sol->end());
  den.emplace_back(1);
  RationalFunctionQ model(PolynomialQ(std::move(num)), PolynomialQ(std::move(den)));
  for (const auto& p : points) {
    const ExactRational d = model.denominator()(p.n);
    if (d == 0) return std::nullopt;
    if (model.numerator()(p.n) / d != p.value) return std::nullopt;
  }
  return model;
}

} // namespace detail

// Lowest-degree rational function through every sample. Degree pairs are tried
// by increasing num_deg + den_deg, ties broken toward the smaller den_deg; each
// candidate is solved on a prefix of the samples and must reproduce the rest,
// with at least two samples held out.
inline RationalFunctionQ reconstruct_rational(std::span<const Sample> points, int max_num_deg,
                                              int max_den_deg) {
  if (max_num_deg < 0 || max_den_deg < 0) throw DomainError("degree bounds must be non-negative");
  for (int total = 0; total <= max_num_deg + max_den_deg; ++total) {
    for (int den_deg = 0; den_deg <= std::min(total, max_den_deg); ++den_deg) {
      const int num_deg = total - den_deg;
      if (num_deg > max_num_deg) continue;
      const auto unknowns = static_cast<std::size_t>(num_deg + 1 + den_deg);
      if (points.size() < unknowns + 2) continue;
      if (auto model = detail::fit_rational(points, num_deg, den_deg)) return *model;
    }
  }
  throw NoConsistentModel("no rational function with numerator degree <= " +
                          std::to_string(max_num_deg) + " and denominator degree <= " +
                          std::to_string(max_den_deg) + " fits the " +
                          std::to_string(points.size()) + " samples");
}

} // namespace subperm
