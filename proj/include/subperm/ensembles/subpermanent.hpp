#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <vector>

#include "subperm/arith/rational.hpp"
#include "subperm/ensembles/matrix.hpp"

namespace subperm {

// profile[m] = perm_m(A) for m = 0..n: the sum over m-subsets of rows and
// columns and bijections between them of the product of the selected entries.
using SubpermanentProfile = std::vector<BigInt>;

namespace detail {

using u128 = unsigned __int128;

struct Entry {
  int col;
  int value;
};

// A connected block of the bipartite support graph. Rows are listed in BFS
// order so that columns enter and leave the DP frontier quickly.
struct SupportComponent {
  std::vector<int> rows;
  std::vector<int> cols;
};

inline std::vector<SupportComponent> support_components(const IntMatrix& a) {
  const int n = a.n();
  std::vector<std::vector<int>> rows_of_col(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j) != 0) rows_of_col[static_cast<std::size_t>(j)].push_back(i);

  std::vector<char> row_seen(static_cast<std::size_t>(n), 0), col_seen(static_cast<std::size_t>(n), 0);
  std::vector<SupportComponent> out;
  std::vector<int> queue;
  for (int start = 0; start < n; ++start) {
    if (row_seen[static_cast<std::size_t>(start)] || a.row_sum(start) == 0) continue;
    SupportComponent comp;
    queue.assign(1, start);
    row_seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int i = queue[head];
      comp.rows.push_back(i);
      for (int j = 0; j < n; ++j) {
        if (a(i, j) == 0 || col_seen[static_cast<std::size_t>(j)]) continue;
        col_seen[static_cast<std::size_t>(j)] = 1;
        comp.cols.push_back(j);
        for (int k : rows_of_col[static_cast<std::size_t>(j)]) {
          if (row_seen[static_cast<std::size_t>(k)]) continue;
          row_seen[static_cast<std::size_t>(k)] = 1;
          queue.push_back(k);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// log2 of prod_i (1 + row_sum_i): coefficient-wise the sub-permanent
// generating polynomial is dominated by prod_i (1 + row_sum_i x).
inline double profile_bound_bits(const IntMatrix& a, const std::vector<int>& rows) {
  double bits = 0;
  for (int i : rows) bits += std::log2(1.0 + a.row_sum(i));
  return bits;
}

template <class Count>
Count scale(const Count& v, int a) {
  if constexpr (std::is_same_v<Count, BigInt>) return v * static_cast<long>(a);
  else return a == 1 ? v : v * static_cast<Count>(a);
}

// Frontier DP over the rows of one component. A column occupies a frontier
// slot from the first row that touches it to the last; the state is
// (mask of used frontier slots, number of used columns already retired).
// Returns the component's profile, indexed by number of selected entries.
template <class Count>
std::vector<Count> component_profile(const IntMatrix& a, const SupportComponent& comp) {
  const int n = a.n();
  const int rows = static_cast<int>(comp.rows.size());
  std::vector<int> first(static_cast<std::size_t>(n), -1), last(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Entry>> row_entries(static_cast<std::size_t>(rows));
  for (int t = 0; t < rows; ++t) {
    const int i = comp.rows[static_cast<std::size_t>(t)];
    for (int j = 0; j < n; ++j) {
      const int v = a(i, j);
      if (v == 0) continue;
      row_entries[static_cast<std::size_t>(t)].push_back({j, v});
      if (first[static_cast<std::size_t>(j)] < 0) first[static_cast<std::size_t>(j)] = t;
      last[static_cast<std::size_t>(j)] = t;
    }
  }
  std::vector<std::vector<int>> opening(static_cast<std::size_t>(rows)), closing(static_cast<std::size_t>(rows));
  for (int j : comp.cols) {
    opening[static_cast<std::size_t>(first[static_cast<std::size_t>(j)])].push_back(j);
    closing[static_cast<std::size_t>(last[static_cast<std::size_t>(j)])].push_back(j);
  }

  // Frontier width decides the state size.
  int width = 0, active = 0;
  for (int t = 0; t < rows; ++t) {
    active += static_cast<int>(opening[static_cast<std::size_t>(t)].size());
    width = std::max(width, active);
    active -= static_cast<int>(closing[static_cast<std::size_t>(t)].size());
  }
  if (width > 26) throw DomainError("sub-permanent frontier too wide (" + std::to_string(width) + " columns)");

  const std::size_t states = std::size_t{1} << width;
  std::vector<std::vector<Count>> table;  // table[k][mask]
  table.emplace_back(states, Count(0));
  table[0][0] = Count(1);

  std::vector<int> slot_of(static_cast<std::size_t>(n), -1);
  std::vector<int> free_slots(static_cast<std::size_t>(width));
  std::iota(free_slots.rbegin(), free_slots.rend(), 0);
  std::uint64_t live = 0;  // union of masks that may be non-zero
  std::vector<std::pair<std::uint64_t, int>> moves;

  for (int t = 0; t < rows; ++t) {
    for (int j : opening[static_cast<std::size_t>(t)]) {
      slot_of[static_cast<std::size_t>(j)] = free_slots.back();
      free_slots.pop_back();
    }
    moves.clear();
    std::uint64_t reach = 0;
    for (const Entry& e : row_entries[static_cast<std::size_t>(t)]) {
      const auto bit = std::uint64_t{1} << slot_of[static_cast<std::size_t>(e.col)];
      moves.emplace_back(bit, e.value);
      reach |= bit;
    }
    // Descending masks: each target mask | bit exceeds its source, so a source
    // is always read before it is written within this row.
    for (auto& layer : table) {
      for (std::size_t mask = states; mask-- > 0;) {
        if ((mask & ~live) != 0) continue;
        const Count v = layer[mask];
        if (v == 0) continue;
        for (const auto& [bit, value] : moves)
          if ((mask & bit) == 0) layer[mask | bit] += scale(v, value);
      }
    }
    live |= reach;

    for (int j : closing[static_cast<std::size_t>(t)]) {
      const int slot = slot_of[static_cast<std::size_t>(j)];
      const auto bit = std::uint64_t{1} << slot;
      table.emplace_back(states, Count(0));
      for (std::size_t k = table.size() - 1; k-- > 0;) {
        auto& from = table[k];
        auto& to = table[k + 1];
        for (std::size_t mask = 0; mask < states; ++mask) {
          if ((mask & bit) == 0 || (mask & ~live) != 0 || from[mask] == 0) continue;
          to[mask & ~bit] += from[mask];
          from[mask] = Count(0);
        }
      }
      live &= ~bit;
      free_slots.push_back(slot);
      std::sort(free_slots.rbegin(), free_slots.rend());
    }
  }

  std::vector<Count> out(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) out[k] = table[k][0];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

template <class Count>
std::vector<Count> profile_as(const IntMatrix& a) {
  std::vector<Count> total(static_cast<std::size_t>(a.n()) + 1, Count(0));
  total[0] = Count(1);
  int degree = 0;
  for (const auto& comp : support_components(a)) {
    const auto part = component_profile<Count>(a, comp);
    std::vector<Count> next(total.size(), Count(0));
    for (int i = 0; i <= degree; ++i) {
      if (total[static_cast<std::size_t>(i)] == 0) continue;
      for (std::size_t k = 0; k < part.size() && i + k < next.size(); ++k)
        next[static_cast<std::size_t>(i) + k] += total[static_cast<std::size_t>(i)] * part[k];
    }
    degree = std::min(a.n(), degree + static_cast<int>(part.size()) - 1);
    total = std::move(next);
  }
  return total;
}

// Profile in 128-bit words; callers must check fits_u128 first.
inline bool fits_u128(const IntMatrix& a) {
  std::vector<int> rows(static_cast<std::size_t>(a.n()));
  std::iota(rows.begin(), rows.end(), 0);
  return profile_bound_bits(a, rows) < 126.0;
}

} // namespace detail

// Every sub-permanent perm_0(A) .. perm_n(A) in one pass: the support graph is
// split into connected components, each is swept by the frontier DP, and the
// component polynomials are multiplied. perm_0 = 1.
inline SubpermanentProfile subpermanent_profile(const IntMatrix& a) {
  if (detail::fits_u128(a)) {
    const auto words = detail::profile_as<detail::u128>(a);
    SubpermanentProfile out;
    out.reserve(words.size());
    for (auto w : words) out.push_back(to_bigint(w));
    return out;
  }
  return detail::profile_as<BigInt>(a);
}

// perm_m(A); 1 for m = 0 and 0 for m > n.
inline BigInt subpermanent_sum(const IntMatrix& a, int m) {
  if (m < 0) throw DomainError("sub-permanent order must be non-negative");
  if (m == 0) return 1;
  if (m > a.n()) return 0;
  return subpermanent_profile(a)[static_cast<std::size_t>(m)];
}

} // namespace subperm
