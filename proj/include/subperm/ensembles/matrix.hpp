#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "subperm/errors.hpp"

namespace subperm {

// Square matrix of non-negative integers, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw DomainError("matrix dimension must be non-negative");
  }
  IntMatrix(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 0 || entries_.size() != static_cast<std::size_t>(n) * n)
      throw DomainError("matrix entry count does not match dimension");
    for (int v : entries_)
      if (v < 0) throw DomainError("matrix entries must be non-negative");
  }

  static IntMatrix identity(int n) {
    IntMatrix a(n);
    for (int i = 0; i < n; ++i) a(i, i) = 1;
    return a;
  }
  static IntMatrix filled(int n, int value) {
    return IntMatrix(n, std::vector<int>(static_cast<std::size_t>(n) * n, value));
  }

  // Adds the permutation matrix with ones at (i, perm[i]).
  void add_permutation(std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != n_) throw DomainError("permutation length mismatch");
    for (int i = 0; i < n_; ++i) ++(*this)(i, perm[static_cast<std::size_t>(i)]);
  }
  void remove_permutation(std::span<const int> perm) {
    for (int i = 0; i < n_; ++i) --(*this)(i, perm[static_cast<std::size_t>(i)]);
  }

  int n() const { return n_; }
  int& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  int operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<int>& entries() const { return entries_; }
  bool operator==(const IntMatrix&) const = default;
  std::span<const int> row(int i) const {
    return std::span<const int>(entries_).subspan(static_cast<std::size_t>(i) * n_, n_);
  }

  int row_sum(int i) const {
    const auto r = row(i);
    return std::accumulate(r.begin(), r.end(), 0);
  }
  int col_sum(int j) const {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += (*this)(i, j);
    return s;
  }
  // True when every row and column sums to r.
  bool is_regular(int r) const {
    for (int i = 0; i < n_; ++i)
      if (row_sum(i) != r || col_sum(i) != r) return false;
    return true;
  }

  // P * A * Q^T where P, Q send row i to rows[i] and column j to cols[j].
  IntMatrix permuted(std::span<const int> rows, std::span<const int> cols) const {
    IntMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        out(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]) = (*this)(i, j);
    return out;
  }

private:
  int n_ = 0;
  std::vector<int> entries_;
};

// (n, r, [m_1 .. m_N]): dimension, number of permutations (regularity), and
// the orders of the sub-permanents in the product moment.
struct MomentSpec {
  int n = 0;
  int r = 1;
  std::vector<int> m;

  void validate() const {
    if (n < 0) throw DomainError("n must be non-negative");
    if (r < 1) throw DomainError("r must be at least 1");
    if (m.empty()) throw DomainError("the moment needs at least one sub-permanent order");
    for (int mi : m)
      if (mi < 0) throw DomainError("sub-permanent orders must be non-negative");
  }
  int total_order() const { return std::accumulate(m.begin(), m.end(), 0); }
  bool operator==(const MomentSpec&) const = default;
};

inline std::string to_string(const MomentSpec& s) {
  std::string out = "n=" + std::to_string(s.n) + " r=" + std::to_string(s.r) + " m=[";
  for (std::size_t i = 0; i < s.m.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.m[i]);
  }
  return out + "]";
}

} // namespace subperm
