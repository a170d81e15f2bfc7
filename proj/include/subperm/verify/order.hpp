#pragma once

#include <cmath>
#include <vector>

#include "subperm/arith/rational.hpp"
#include "subperm/errors.hpp"

namespace subperm::verify {

// ln|q| without overflowing doubles for huge numerators or denominators.
inline double log_abs(const ExactRational& q) {
  if (q == 0) throw DomainError("log of zero");
  long e_num = 0, e_den = 0;
  const double m_num = std::fabs(mpz_get_d_2exp(&e_num, q.get_num_mpz_t()));
  const double m_den = mpz_get_d_2exp(&e_den, q.get_den_mpz_t());
  return std::log(m_num) - std::log(m_den) + static_cast<double>(e_num - e_den) * std::log(2.0);
}

// Least-squares slope of log|y| against log n.
inline double loglog_slope(const std::vector<long>& grid, const std::vector<ExactRational>& values) {
  if (grid.size() != values.size() || grid.size() < 2) throw DomainError("slope fit needs matching grids of size >= 2");
  const double count = static_cast<double>(grid.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = std::log(static_cast<double>(grid[i]));
    const double y = log_abs(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = count * sxx - sx * sx;
  if (den == 0) throw DomainError("slope fit needs at least two distinct nodes");
  return (count * sxy - sx * sy) / den;
}

// |v_i| / |v_{i+1}| for consecutive grid points.
inline std::vector<double> successive_ratios(const std::vector<ExactRational>& values) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    out.push_back(std::exp(log_abs(values[i]) - log_abs(values[i + 1])));
  return out;
}

// Limit of f(n) = L + c_1/n + c_2/n^2 + ... from samples on a doubling grid
// n, 2n, 4n, ...: each Richardson level removes the next power of 1/n.
inline ExactRational richardson_limit(const std::vector<long>& grid, std::vector<ExactRational> values) {
  if (grid.size() != values.size() || grid.empty()) throw DomainError("Richardson needs matching non-empty grids");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i + 1] != 2 * grid[i]) throw DomainError("Richardson extrapolation needs a doubling grid");
  ExactRational weight(1);
  for (std::size_t level = 1; level < values.size(); ++level) {
    weight *= 2;
    for (std::size_t i = 0; i + level < values.size(); ++i)
      values[i] = (weight * values[i + 1] - values[i]) / (weight - 1);
  }
  return values.front();
}

} // namespace subperm::verify
