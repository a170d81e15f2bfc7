#pragma once

#include <cstddef>
#include <iterator>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "subperm/arith/rational.hpp"

namespace subperm {

namespace detail {

// Grows on demand; readers take a shared lock, extension takes the unique lock.
class FactorialTable {
public:
  BigInt get(unsigned k) {
    {
      std::shared_lock lock(mutex_);
      if (k < table_.size()) return table_[k];
    }
    std::unique_lock lock(mutex_);
    while (table_.size() <= k) {
      const auto next = table_.size();
      table_.push_back(table_.back() * static_cast<unsigned long>(next));
    }
    return table_[k];
  }

private:
  std::shared_mutex mutex_;
  std::vector<BigInt> table_{BigInt(1)};
};

inline FactorialTable& factorial_table() {
  static FactorialTable table;
  return table;
}

} // namespace detail

inline BigInt factorial(long k) {
  if (k < 0) throw DomainError("factorial of a negative integer");
  return detail::factorial_table().get(static_cast<unsigned>(k));
}

// C(n, k), zero outside 0 <= k <= n.
inline BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// n (n-1) ... (n-k+1); zero when k > n >= 0.
inline BigInt falling_factorial(long n, long k) {
  if (k < 0) throw DomainError("falling factorial with negative length");
  BigInt out(1);
  for (long i = 0; i < k; ++i) out *= n - i;
  return out;
}

// A split of `total` into parts.size() ordered non-negative parts.
struct Composition {
  std::vector<int> parts;
  int total = 0;

  std::size_t size() const { return parts.size(); }
  int operator[](std::size_t i) const { return parts[i]; }
  bool operator==(const Composition&) const = default;
};

// All compositions of `total` into `parts` parts, in colexicographic order:
// ascending in (c[r-1], c[r-2], ..., c[0]). For (3, 2) this is
// (3,0), (2,1), (1,2), (0,3).
class Compositions {
public:
  Compositions(int total, int parts) : total_(total), parts_(parts) {
    if (parts < 1) throw DomainError("compositions need at least one part");
    if (total < 0) throw DomainError("compositions of a negative total");
  }

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using reference = const Composition&;
    using pointer = const Composition*;

    iterator() = default;
    iterator(int total, int parts) : done_(false) {
      current_.parts.assign(static_cast<std::size_t>(parts), 0);
      current_.parts[0] = total;
      current_.total = total;
    }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }

    iterator& operator++() {
      auto& c = current_.parts;
      const std::size_t last = c.size() - 1;
      std::size_t i = 0;
      while (i < last && c[i] == 0) ++i;
      if (i == last) {
        done_ = true;
        return *this;
      }
      const int v = c[i];
      c[i] = 0;
      c[i + 1] += 1;
      c[0] = v - 1;
      return *this;
    }
    void operator++(int) { ++*this; }

    bool operator==(const iterator& other) const {
      return done_ == other.done_ && (done_ || current_ == other.current_);
    }

  private:
    Composition current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(total_, parts_); }
  iterator end() const { return iterator(); }

  BigInt count() const { return binomial(total_ + parts_ - 1, parts_ - 1); }

private:
  int total_;
  int parts_;
};

inline Compositions compositions(int total, int parts) { return Compositions(total, parts); }

// m! / (c_1! ... c_r!)
inline BigInt multinomial(const Composition& c) {
  BigInt out = factorial(c.total);
  for (int part : c.parts) out /= factorial(part);
  return out;
}

// 1 / (c_1! ... c_r!)
inline ExactRational inverse_factorial_product(const Composition& c) {
  BigInt den(1);
  for (int part : c.parts) den *= factorial(part);
  return make_rational(BigInt(1), den);
}

} // namespace subperm
