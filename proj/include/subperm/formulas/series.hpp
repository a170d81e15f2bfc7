#pragma once

#include "subperm/arith/combinatorics.hpp"

namespace subperm {

// Leading coefficients of E(perm_m(A)) = a n^m + b n^{m-1} + c n^{m-2} + ...
// for the uniform r-regular ensemble.
struct SeriesCoeffs {
  ExactRational a;
  ExactRational b;
  ExactRational c;
};

// a = r^m/m!
// b = a m(m-1) (-1 + 1/(2r))
// c = a m(m-1)(m-2) ((3m+1)/6 - (m+1)/(2r) + (3m+7)/(24 r^2))
inline SeriesCoeffs series_coeffs(int r, int m) {
  if (r < 1) throw DomainError("series coefficients need r >= 1");
  if (m < 0) throw DomainError("series coefficients need m >= 0");
  const ExactRational rr(r);
  const ExactRational a = pow(rr, static_cast<unsigned>(m)) / ExactRational(factorial(m));
  const ExactRational mm(m);
  const ExactRational b = a * mm * (mm - 1) * (ExactRational(-1) + 1 / (2 * rr));
  const ExactRational c = a * mm * (mm - 1) * (mm - 2) *
                          ((3 * mm + 1) / 6 - (mm + 1) / (2 * rr) + (3 * mm + 7) / (24 * rr * rr));
  return {a, b, c};
}

} // namespace subperm
