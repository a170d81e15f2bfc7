#pragma once

#include <mpfr.h>

#include <string_view>
#include <vector>

#include "subperm/arith/combinatorics.hpp"

namespace subperm {

enum class MultinomialIdentity { A1, A2, A3, A4 };

inline std::string_view identity_name(MultinomialIdentity id) {
  switch (id) {
  case MultinomialIdentity::A1: return "A1";
  case MultinomialIdentity::A2: return "A2";
  case MultinomialIdentity::A3: return "A3";
  case MultinomialIdentity::A4: return "A4";
  }
  return "?";
}

struct IdentitySides {
  ExactRational lhs;
  ExactRational rhs;
};

// lhs by summing over the compositions of m into r parts, rhs in closed form:
//   A1  sum 1/prod m_i!         = r^m/m!
//   A2  sum m_1/prod m_i!       = (m/r) r^m/m!
//   A3  sum m_1^2/prod m_i!     = m(m-1) r^{m-2}/m! + m r^{m-1}/m!
//   A4  sum m_1 m_2/prod m_i!   = m(m-1) r^{m-2}/m!     (r >= 2)
inline IdentitySides multinomial_identity_check(MultinomialIdentity id, int m, int r) {
  if (m < 0 || r < 1) throw DomainError("identities need m >= 0 and r >= 1");
  if (id == MultinomialIdentity::A4 && r < 2) throw DomainError("A4 needs two colours (r >= 2)");

  ExactRational lhs(0);
  for (const auto& c : compositions(m, r)) {
    long weight = 1;
    switch (id) {
    case MultinomialIdentity::A1: break;
    case MultinomialIdentity::A2: weight = c[0]; break;
    case MultinomialIdentity::A3: weight = static_cast<long>(c[0]) * c[0]; break;
    case MultinomialIdentity::A4: weight = static_cast<long>(c[0]) * c[1]; break;
    }
    lhs += inverse_factorial_product(c) * weight;
  }

  const ExactRational rr(r);
  const ExactRational mfact(factorial(m));
  // r^k / m!, taken as 0 when the polynomial prefactor vanishes (k < 0 only
  // occurs together with a zero prefactor).
  auto term = [&](long prefactor, int k) -> ExactRational {
    if (prefactor == 0) return ExactRational(0);
    return ExactRational(prefactor) * pow(rr, static_cast<unsigned>(k)) / mfact;
  };
  ExactRational rhs;
  switch (id) {
  case MultinomialIdentity::A1: rhs = term(1, m); break;
  case MultinomialIdentity::A2: rhs = term(m, m) / rr; break;
  case MultinomialIdentity::A3: rhs = term(static_cast<long>(m) * (m - 1), m - 2) + term(m, m - 1); break;
  case MultinomialIdentity::A4: rhs = term(static_cast<long>(m) * (m - 1), m - 2); break;
  }
  return {lhs, rhs};
}

// Left side of the colour-symmetry identity for subterm order m and colour j
// (1-based):
//   sum_{splits} (n!)^{-r} C(n,m)^2 m! (m!/prod m_i!) prod_i (n-m_i)! (m_j - m/r)
// which vanishes because the weight is symmetric in the colours.
inline ExactRational symmetry_identity_residual(int n, int r, int m, int j) {
  if (r < 1 || j < 1 || j > r) throw DomainError("colour index must lie in 1..r");
  if (n < 1 || m < 0) throw DomainError("symmetry identity needs n >= 1 and m >= 0");
  const BigInt b = binomial(n, m);
  BigInt denom;
  mpz_pow_ui(denom.get_mpz_t(), factorial(n).get_mpz_t(), static_cast<unsigned long>(r));
  ExactRational sum(0);
  const ExactRational mean = ExactRational(m) / r;
  for (const auto& c : compositions(m, r)) {
    BigInt w = b * b * factorial(m) * multinomial(c);
    for (int part : c.parts) w *= n - part < 0 ? BigInt(0) : factorial(n - part);
    sum += ExactRational(w) * (ExactRational(c[static_cast<std::size_t>(j - 1)]) - mean);
  }
  return sum / ExactRational(denom);
}

// Coefficients a_i and shifts q_i with sum a_i = 0 and sum a_i q_i = 0.
class LemmaInput {
public:
  LemmaInput(std::vector<ExactRational> a, std::vector<long> q, long n)
      : a_(std::move(a)), q_(std::move(q)), n_(n) {
    if (a_.size() != q_.size() || a_.empty()) throw DomainError("a and q must have equal, non-zero length");
    ExactRational s0(0), s1(0);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      s0 += a_[i];
      s1 += a_[i] * q_[i];
    }
    if (s0 != 0 || s1 != 0)
      throw HypothesisViolated("lemma needs sum a_i = 0 and sum a_i q_i = 0 (got " + to_string(s0) + ", " +
                               to_string(s1) + ")");
    for (long qi : q_)
      if (qi >= n_) throw DomainError("lemma needs n > max q_i");
  }

  const std::vector<ExactRational>& a() const { return a_; }
  const std::vector<long>& q() const { return q_; }
  long n() const { return n_; }

private:
  std::vector<ExactRational> a_;
  std::vector<long> q_;
  long n_;
};

struct LemmaResidual {
  double actual;            // sum a_i ln((n - q_i)!)
  ExactRational predicted;  // sum a_i [q^2/(2n) + q^3/(6n^2) - q^2/(4n^2)]
  double residual;          // actual - predicted, evaluated before rounding
};

// The log-factorials are evaluated with MPFR at 256 bits, far below the
// 1/n^5 scale of the quantities compared.
inline LemmaResidual stirling_lemma_residual(const LemmaInput& input) {
  const long n = input.n();
  ExactRational predicted(0);
  for (std::size_t i = 0; i < input.a().size(); ++i) {
    const ExactRational q(input.q()[i]);
    const ExactRational nn(n);
    predicted += input.a()[i] * (q * q / (2 * nn) + q * q * q / (6 * nn * nn) - q * q / (4 * nn * nn));
  }

  constexpr mpfr_prec_t prec = 256;
  mpfr_t acc, term, coef;
  mpfr_inits2(prec, acc, term, coef, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (std::size_t i = 0; i < input.a().size(); ++i) {
    mpfr_set_si(term, n - input.q()[i] + 1, MPFR_RNDN);
    mpfr_lngamma(term, term, MPFR_RNDN);
    mpfr_set_q(coef, input.a()[i].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term, term, coef, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  const double actual = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_set_q(coef, predicted.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(acc, acc, coef, MPFR_RNDN);
  const double residual = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clears(acc, term, coef, static_cast<mpfr_ptr>(nullptr));
  return {actual, predicted, residual};
}

} // namespace subperm
