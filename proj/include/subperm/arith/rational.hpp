#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "subperm/errors.hpp"

namespace subperm {

using BigInt = mpz_class;

// mpq_class keeps itself canonical under arithmetic; values built from a
// numerator/denominator pair go through make_rational.
using ExactRational = mpq_class;

inline ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

inline ExactRational make_rational(long num, long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

inline BigInt to_bigint(unsigned __int128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const auto lo = static_cast<std::uint64_t>(v);
  BigInt out(static_cast<unsigned long>(hi));
  out <<= 64;
  out += BigInt(static_cast<unsigned long>(lo));
  return out;
}

// "p/q", or "p" when q = 1.
inline std::string to_string(const ExactRational& q) { return q.get_str(); }

inline ExactRational parse_rational(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return ExactRational(BigInt(s));
    return make_rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw DomainError("not a rational literal: '" + s + "'");
  }
}

inline double to_double(const ExactRational& q) { return q.get_d(); }

inline ExactRational pow(const ExactRational& base, unsigned exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return make_rational(num, den);
}

} // namespace subperm
