#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "subperm/arith/combinatorics.hpp"

namespace subperm {

// Conjugacy class of S_n: cycle lengths in non-increasing order and the
// number of permutations with that cycle structure.
struct CycleType {
  std::vector<int> partition;
  BigInt class_size;

  int n() const { return std::accumulate(partition.begin(), partition.end(), 0); }

  // A permutation in the class: consecutive blocks 0..L-1, L..., each a cycle
  // i -> i+1 -> ... -> start.
  std::vector<int> representative() const {
    std::vector<int> perm(static_cast<std::size_t>(n()));
    int start = 0;
    for (int len : partition) {
      for (int k = 0; k < len; ++k)
        perm[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
      start += len;
    }
    return perm;
  }
};

// n! / prod_j (j^{c_j} c_j!) with c_j the multiplicity of part j.
inline BigInt class_size(const std::vector<int>& partition) {
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  BigInt den(1);
  std::vector<int> mult(static_cast<std::size_t>(n) + 1, 0);
  for (int part : partition) {
    if (part < 1) throw DomainError("partition parts must be positive");
    ++mult[static_cast<std::size_t>(part)];
    den *= part;
  }
  for (int c : mult) den *= factorial(c);
  return factorial(n) / den;
}

// Partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1,...,1).
inline std::vector<CycleType> cycle_types(int n) {
  if (n < 0) throw DomainError("cycle types of a negative degree");
  std::vector<CycleType> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back({parts, class_size(parts)});
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::size_t partition_count(int n) {
  std::vector<std::size_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int k = part; k <= n; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
  return p[static_cast<std::size_t>(n)];
}

} // namespace subperm
