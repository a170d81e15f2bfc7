#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "subperm/ensembles/oracles.hpp"

namespace subperm::verify {

// E_1(perm_a) and E_1(perm_a perm_b) for every 0 <= a <= b <= n, from a single
// enumeration at (n, r).
struct PairMoments {
  int n = 0;
  int r = 0;
  std::vector<ExactRational> single;
  std::vector<std::vector<ExactRational>> pair;

  const ExactRational& product(int a, int b) const {
    if (a > b) std::swap(a, b);
    return pair[static_cast<std::size_t>(a)][static_cast<std::size_t>(b - a)];
  }
  ExactRational covariance(int a, int b) const {
    return product(a, b) - single[static_cast<std::size_t>(a)] * single[static_cast<std::size_t>(b)];
  }
};

inline PairMoments compute_pair_moments(int n, int r, const OracleOptions& options) {
  std::vector<Monomial> monomials;
  for (int a = 0; a <= n; ++a) monomials.push_back({a});
  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b) monomials.push_back({a, b});
  const auto values = e1_exact_many(n, r, monomials, options);
  PairMoments out{n, r, {}, {}};
  std::size_t k = 0;
  for (int a = 0; a <= n; ++a) out.single.push_back(values[k++]);
  for (int a = 0; a <= n; ++a) {
    out.pair.emplace_back();
    for (int b = a; b <= n; ++b) out.pair.back().push_back(values[k++]);
  }
  return out;
}

// Memoizes pair tables per (n, r); safe to share between threads.
class MomentCache {
public:
  explicit MomentCache(OracleOptions options = {}) : options_(options) {}

  const OracleOptions& options() const { return options_; }

  // Concurrent callers asking for the same (n, r) wait on one computation.
  std::shared_ptr<const PairMoments> pairs(int n, int r) {
    const auto key = std::make_pair(n, r);
    std::promise<std::shared_ptr<const PairMoments>> promise;
    std::shared_future<std::shared_ptr<const PairMoments>> future;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = tables_.find(key);
      if (it == tables_.end()) {
        it = tables_.emplace(key, promise.get_future().share()).first;
        owner = true;
      }
      future = it->second;
    }
    if (owner) {
      try {
        promise.set_value(std::make_shared<const PairMoments>(compute_pair_moments(n, r, options_)));
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard lock(mutex_);
        tables_.erase(key);
      }
    }
    return future.get();
  }

  ExactRational single(int n, int r, int m) {
    if (m > n) return 0;
    return pairs(n, r)->single[static_cast<std::size_t>(m)];
  }
  ExactRational product(int n, int r, int m1, int m2) {
    if (m1 > n || m2 > n) return 0;
    return pairs(n, r)->product(m1, m2);
  }

private:
  OracleOptions options_;
  std::mutex mutex_;
  std::map<std::pair<int, int>, std::shared_future<std::shared_ptr<const PairMoments>>> tables_;
};

} // namespace subperm::verify
