#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "subperm/ensembles/cycle_types.hpp"
#include "subperm/formulas/appendix.hpp"
#include "subperm/parallel.hpp"
#include "subperm/verify/claims.hpp"

namespace subperm::verify {

struct FactorizationCase {
  MeasureKind measure = MeasureKind::E1SumOfPermutations;
  int r = 2;
  std::vector<int> m;
  std::vector<long> grid;
  std::optional<OrderTarget> target;  // default_factorization_target when empty
};

struct TermCase {
  int r = 2;
  std::vector<int> m;
  std::vector<long> grid;
};

struct SuiteConfig {
  OracleOptions oracle;
  NodePolicy nodes;
  double slope_tolerance = 0.35;
  unsigned jobs = 1;  // suite items run concurrently

  std::vector<FactorizationCase> factorization{
      {MeasureKind::E1SumOfPermutations, 2, {2, 2}, {8, 16, 32}, OrderTarget{-4, OrderMode::TwoSided}},
      {MeasureKind::E1SumOfPermutations, 2, {3, 2}, {8, 16, 32}, OrderTarget{-4, OrderMode::TwoSided}},
      {MeasureKind::E1SumOfPermutations, 2, {2, 2}, {8, 16, 32}, OrderTarget{-2, OrderMode::UpperBound}},
      {MeasureKind::E1SumOfPermutations, 2, {3, 2}, {8, 16, 32}, OrderTarget{-2, OrderMode::UpperBound}},
      {MeasureKind::E1SumOfPermutations, 2, {2, 2, 2}, {8, 12, 16}, OrderTarget{-2, OrderMode::UpperBound}},
      {MeasureKind::E1SumOfPermutations, 3, {2, 2}, {4, 6, 8}, OrderTarget{-2, OrderMode::UpperBound}},
      {MeasureKind::E1SumOfPermutations, 3, {3, 2}, {5, 6, 8}, OrderTarget{-2, OrderMode::UpperBound}},
      {MeasureKind::E1SumOfPermutations, 2, {1, 4}, {8, 16, 32}, std::nullopt},
      {MeasureKind::EBBernoulli, 2, {2, 2}, {16, 32, 64}, std::nullopt},
      {MeasureKind::EBBernoulli, 2, {3, 2}, {16, 32, 64}, std::nullopt},
  };
  std::vector<TermCase> cancellation{
      {2, {2, 2}, {10, 20, 40}},
      {3, {2, 1}, {9, 18, 36}},
      {2, {3, 2}, {10, 20, 40}},
  };
  std::vector<TermCase> first_order{
      {2, {2, 2}, {16, 32, 64}},
      {3, {2, 1}, {16, 32, 64}},
      {2, {3, 2}, {16, 32, 64}},
  };
  std::vector<int> series_orders{2, 3, 4, 5};

  int degree_r = 2;
  DegreeScanOptions degree;
  std::vector<std::pair<int, int>> leading_pairs{{5, 3}, {2, 2}, {3, 2}, {4, 4}};
  std::vector<int> leading_r{1, 2};
  // Rational reconstruction for r = 3 is slow; off unless asked for.
  std::vector<std::pair<int, int>> rational_pairs;

  int appendix_max_m = 10;
  int appendix_max_r = 6;
  int symmetry_max_n = 10;
  int symmetry_max_r = 4;
  int symmetry_max_m = 6;
  std::vector<long> lemma_grid{10, 20, 40, 80, 160};

  int naive_max_n = 5;
  int naive_max_r = 3;
  int naive_max_total = 6;
  int mc_specs = 20;
  std::uint64_t mc_samples = 4000;
  std::uint64_t seed = 20240917;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"factorization", "cancellation", "series",  "appendix",
                                              "degree",        "reconstruct",  "oracles", "all"};
  return names;
}

namespace detail {

inline std::string join(const std::vector<int>& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string case_id(const std::string& prefix, int r, const std::vector<int>& m) {
  return prefix + "/r" + std::to_string(r) + "/m" + join(m);
}

// Turns an order estimate into a report. A remainder that is zero on the
// whole grid factorizes identically and passes.
template <class Estimate>
VerificationReport order_report(std::string id, Json inputs, Estimate&& estimate) {
  return timed(std::move(id), std::move(inputs), [&](VerificationReport& rep) {
    try {
      const OrderEstimate est = estimate();
      rep.evidence = to_json(est);
      rep.verdict = est.verdict();
    } catch (const DegenerateRemainder& e) {
      rep.evidence["identically_factorizing"] = true;
      rep.evidence["note"] = e.what();
      rep.verdict = Verdict::Pass;
    }
  });
}

using Job = std::function<VerificationReport()>;

inline void add_factorization(std::vector<Job>& jobs, const SuiteConfig& cfg, MomentCache& cache) {
  for (const auto& c : cfg.factorization) {
    const OrderTarget t = c.target.value_or(default_factorization_target(c.measure, c.m.size()));
    std::string id = case_id("factorization/" + std::string(measure_name(c.measure)), c.r, c.m);
    id += t.mode == OrderMode::TwoSided ? "/order" : "/bound";
    jobs.push_back([&cfg, &cache, c, t, id] {
      Json inputs{{"measure", measure_name(c.measure)}, {"r", c.r}, {"m", c.m}, {"grid", c.grid}};
      return order_report(id, inputs, [&] {
        return factorization_order(c.measure, c.r, c.m, c.grid, cache, t, cfg.slope_tolerance);
      });
    });
  }
}

inline void add_cancellation(std::vector<Job>& jobs, const SuiteConfig& cfg) {
  for (const auto& c : cfg.cancellation) {
    jobs.push_back([&cfg, c] {
      Json inputs{{"r", c.r}, {"m", c.m}, {"grid", c.grid}};
      return order_report(case_id("cancellation", c.r, c.m), inputs,
                          [&] { return cancellation_check(c.r, c.m, c.grid, cfg.slope_tolerance); });
    });
  }
  for (const auto& c : cfg.first_order) {
    jobs.push_back([c] {
      auto rep = first_order_check(c.r, c.m, c.grid);
      rep.claim_id = case_id("first-order", c.r, c.m);
      return rep;
    });
  }
}

inline void add_series(std::vector<Job>& jobs, const SuiteConfig& cfg, MomentCache& cache) {
  for (int m : cfg.series_orders) {
    jobs.push_back([&cfg, &cache, m] {
      auto rep = series_mismatch_check(2, m, cfg.nodes, cache);
      rep.claim_id = "series/r2/m" + std::to_string(m);
      return rep;
    });
  }
}

inline VerificationReport multinomial_identities(const SuiteConfig& cfg) {
  Json inputs{{"max_m", cfg.appendix_max_m}, {"max_r", cfg.appendix_max_r}};
  return timed("appendix/multinomial", inputs, [&](VerificationReport& rep) {
    Json failures = Json::array();
    long checked = 0;
    for (auto id : {MultinomialIdentity::A1, MultinomialIdentity::A2, MultinomialIdentity::A3,
                    MultinomialIdentity::A4}) {
      for (int r = id == MultinomialIdentity::A4 ? 2 : 1; r <= cfg.appendix_max_r; ++r) {
        for (int m = 0; m <= cfg.appendix_max_m; ++m) {
          const auto sides = multinomial_identity_check(id, m, r);
          ++checked;
          if (sides.lhs != sides.rhs)
            failures.push_back(Json{{"identity", identity_name(id)},
                                    {"m", m},
                                    {"r", r},
                                    {"lhs", rational_json(sides.lhs)},
                                    {"rhs", rational_json(sides.rhs)}});
        }
      }
    }
    rep.evidence["checked"] = checked;
    rep.evidence["failures"] = failures;
    rep.verdict = failures.empty() ? Verdict::Pass : Verdict::Fail;
  });
}

inline VerificationReport symmetry_identity(const SuiteConfig& cfg) {
  Json inputs{{"max_n", cfg.symmetry_max_n}, {"max_r", cfg.symmetry_max_r}, {"max_m", cfg.symmetry_max_m}};
  return timed("appendix/symmetry", inputs, [&](VerificationReport& rep) {
    Json failures = Json::array();
    long checked = 0;
    for (int n = 1; n <= cfg.symmetry_max_n; ++n)
      for (int r = 1; r <= cfg.symmetry_max_r; ++r)
        for (int m = 0; m <= cfg.symmetry_max_m; ++m)
          for (int j = 1; j <= r; ++j) {
            const auto residual = symmetry_identity_residual(n, r, m, j);
            ++checked;
            if (residual != 0)
              failures.push_back(Json{{"n", n}, {"r", r}, {"m", m}, {"j", j}, {"residual", rational_json(residual)}});
          }
    rep.evidence["checked"] = checked;
    rep.evidence["failures"] = failures;
    rep.verdict = failures.empty() ? Verdict::Pass : Verdict::Fail;
  });
}

// |residual| of the log-factorial expansion should fall as 1/n^3.
inline VerificationReport lemma_order(const SuiteConfig& cfg) {
  const std::vector<ExactRational> a{1, -2, 1};
  const std::vector<long> q{0, 1, 2};
  Json inputs{{"a", {"1", "-2", "1"}}, {"q", q}, {"grid", cfg.lemma_grid}};
  return order_report("appendix/lemma", inputs, [&] {
    validate_grid(cfg.lemma_grid);
    std::vector<ExactRational> residuals;
    for (long n : cfg.lemma_grid) residuals.emplace_back(stirling_lemma_residual(LemmaInput(a, q, n)).residual);
    return estimate_order(cfg.lemma_grid, residuals, -3, OrderMode::TwoSided, cfg.slope_tolerance);
  });
}

inline void add_appendix(std::vector<Job>& jobs, const SuiteConfig& cfg) {
  jobs.push_back([&cfg] { return multinomial_identities(cfg); });
  jobs.push_back([&cfg] { return symmetry_identity(cfg); });
  jobs.push_back([&cfg] { return lemma_order(cfg); });
}

inline void add_degree(std::vector<Job>& jobs, const SuiteConfig& cfg, MomentCache& cache) {
  jobs.push_back([&cfg, &cache] {
    auto rep = degree_claim_scan(cfg.degree_r, cfg.degree, cfg.nodes, cache);
    rep.claim_id = "degree/r" + std::to_string(cfg.degree_r);
    return rep;
  });
}

inline void add_reconstruct(std::vector<Job>& jobs, const SuiteConfig& cfg, MomentCache& cache) {
  jobs.push_back([&cfg, &cache] {
    auto rep = q_reference_claim(2, 5, 3, reference_q1_r2_m5_3(), reference_q2_r2_m5_3(), cfg.nodes, cache);
    rep.claim_id = "reconstruct/q-reference/r2/m5,3";
    return rep;
  });
  for (int r : cfg.leading_r) {
    for (auto [m1, m2] : cfg.leading_pairs) {
      jobs.push_back([&cfg, &cache, r, m1, m2] {
        auto rep = leading_coeff_claim(r, m1, m2, cfg.nodes, cache);
        rep.claim_id = case_id("reconstruct/leading", r, {m1, m2});
        return rep;
      });
    }
  }
  for (auto [m1, m2] : cfg.rational_pairs) {
    jobs.push_back([&cfg, &cache, m1, m2] {
      return timed(case_id("reconstruct/rational", 3, {m1, m2}), Json{{"r", 3}, {"m", {m1, m2}}},
                   [&](VerificationReport& rep) {
                     const auto q = reconstruct_q1_q2(3, m1, m2, cfg.nodes, cache);
                     rep.evidence["q1"] = to_json(q.q1);
                     rep.evidence["q2"] = to_json(q.q2);
                     const auto deg = q.q2.degree();
                     const bool ok = deg && *deg == m1 + m2 - 4 && q.q2.held_out_verified && q.q1.held_out_verified;
                     rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
                   });
    });
  }
}

inline std::vector<Monomial> monomials_up_to(int n, int max_total) {
  std::set<Monomial> out;
  std::function<void(Monomial&, int, int)> rec = [&](Monomial& cur, int min_part, int left) {
    if (!cur.empty()) out.insert(cur);
    for (int p = min_part; p <= std::min(left, n); ++p) {
      cur.push_back(p);
      rec(cur, p, left - p);
      cur.pop_back();
    }
  };
  Monomial cur;
  rec(cur, 1, max_total);
  return {out.begin(), out.end()};
}

inline VerificationReport naive_equivalence(const SuiteConfig& cfg) {
  Json inputs{{"max_n", cfg.naive_max_n}, {"max_r", cfg.naive_max_r}, {"max_total", cfg.naive_max_total}};
  return timed("oracles/naive-equivalence", inputs, [&](VerificationReport& rep) {
    Json failures = Json::array();
    long checked = 0;
    for (int n = 1; n <= cfg.naive_max_n; ++n) {
      const auto monomials = monomials_up_to(n, cfg.naive_max_total);
      for (int r = 1; r <= cfg.naive_max_r; ++r) {
        const auto fast = e1_exact_many(n, r, monomials, cfg.oracle);
        const auto slow = e1_naive_many(n, r, monomials, cfg.oracle);
        for (std::size_t k = 0; k < monomials.size(); ++k) {
          ++checked;
          if (fast[k] != slow[k])
            failures.push_back(Json{{"n", n},
                                    {"r", r},
                                    {"m", monomials[k]},
                                    {"cycle_reduced", rational_json(fast[k])},
                                    {"naive", rational_json(slow[k])}});
        }
      }
    }
    rep.evidence["checked"] = checked;
    rep.evidence["failures"] = failures;
    rep.verdict = failures.empty() ? Verdict::Pass : Verdict::Fail;
  });
}

// Randomized specs drawn from the suite seed; each Monte Carlo mean must lie
// within 4 standard errors of the exact value.
inline VerificationReport monte_carlo_agreement(const SuiteConfig& cfg) {
  Json inputs{{"specs", cfg.mc_specs}, {"samples", cfg.mc_samples}, {"seed", cfg.seed}};
  return timed("oracles/monte-carlo", inputs, [&](VerificationReport& rep) {
    auto rng = SplitMix64::stream(cfg.seed, 0x6d63);
    Json cases = Json::array();
    bool ok = true;
    for (int k = 0; k < cfg.mc_specs; ++k) {
      const int n = 3 + static_cast<int>(rng.below(5));
      const int r = 1 + static_cast<int>(rng.below(3));
      std::vector<int> m{1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n, 4))))};
      if (rng.below(2) == 1) m.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(n, 3)))));
      const MomentSpec spec{n, r, m};
      const double exact = to_double(e1_exact(spec, cfg.oracle).value);
      const auto mc = monte_carlo_moment(MeasureKind::E1SumOfPermutations, spec, cfg.mc_samples,
                                         cfg.seed + static_cast<std::uint64_t>(k), cfg.oracle.threads);
      const double dev = std::fabs(mc.mean - exact);
      const bool pass = dev <= 4 * mc.std_error + 1e-9 * std::fabs(exact);
      ok = ok && pass;
      cases.push_back(Json{{"spec", to_string(spec)},
                           {"exact", exact},
                           {"mean", mc.mean},
                           {"std_error", mc.std_error},
                           {"pass", pass}});
    }
    rep.evidence["cases"] = std::move(cases);
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  });
}

// Tiny-n checks on the uniform 0/1 ensemble: it coincides with E_1 at r = 1,
// is the single all-ones matrix at r = n, and product moments do not depend on
// the order of the factors.
inline VerificationReport uniform_sanity(const SuiteConfig& cfg) {
  return timed("oracles/uniform-tiny", Json{{"max_n", 5}}, [&](VerificationReport& rep) {
    UniformTinyOptions opts;
    opts.oracle = cfg.oracle;
    Json cases = Json::array();
    bool ok = true;
    auto record = [&](const std::string& what, const ExactRational& got, const ExactRational& want) {
      const bool pass = got == want;
      ok = ok && pass;
      cases.push_back(Json{{"check", what}, {"value", rational_json(got)}, {"expected", rational_json(want)}, {"pass", pass}});
    };
    for (int n = 1; n <= 5; ++n)
      for (int m = 0; m <= n; ++m)
        record("r=1 n=" + std::to_string(n) + " m=" + std::to_string(m), e_uniform_exact_tiny({n, 1, {m}}, opts).value,
               ExactRational(binomial(n, m)));
    for (int n = 1; n <= 4; ++n) {
      const BigInt b = binomial(n, 2);
      record("r=n n=" + std::to_string(n), e_uniform_exact_tiny({n, n, {2}}, opts).value,
             ExactRational(b * b * factorial(2)));
    }
    record("order symmetry n=5 r=2", e_uniform_exact_tiny({5, 2, {2, 3}}, opts).value,
           e_uniform_exact_tiny({5, 2, {3, 2}}, opts).value);
    rep.evidence["cases"] = std::move(cases);
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  });
}

inline VerificationReport class_sizes() {
  return timed("oracles/class-sizes", Json{{"max_n", 12}}, [&](VerificationReport& rep) {
    Json cases = Json::array();
    bool ok = true;
    for (int n = 1; n <= 12; ++n) {
      BigInt total(0);
      for (const auto& t : cycle_types(n)) total += t.class_size;
      const bool pass = total == factorial(n);
      ok = ok && pass;
      cases.push_back(Json{{"n", n}, {"sum", total.get_str()}, {"pass", pass}});
    }
    rep.evidence["cases"] = std::move(cases);
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  });
}

inline void add_oracles(std::vector<Job>& jobs, const SuiteConfig& cfg) {
  jobs.push_back([&cfg] { return naive_equivalence(cfg); });
  jobs.push_back([&cfg] { return monte_carlo_agreement(cfg); });
  jobs.push_back([&cfg] { return uniform_sanity(cfg); });
  jobs.push_back([] { return class_sizes(); });
}

} // namespace detail

// Runs the named suite. Reports come back in job order, which depends only on
// the configuration.
inline std::vector<VerificationReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw DomainError("unknown suite '" + name + "'");
  MomentCache cache(cfg.oracle);
  std::vector<detail::Job> jobs;
  const bool all = name == "all";
  if (all || name == "factorization") detail::add_factorization(jobs, cfg, cache);
  if (all || name == "cancellation") detail::add_cancellation(jobs, cfg);
  if (all || name == "series") detail::add_series(jobs, cfg, cache);
  if (all || name == "appendix") detail::add_appendix(jobs, cfg);
  if (all || name == "degree") detail::add_degree(jobs, cfg, cache);
  if (all || name == "reconstruct") detail::add_reconstruct(jobs, cfg, cache);
  if (all || name == "oracles") detail::add_oracles(jobs, cfg);
  return parallel_map(jobs.size(), cfg.jobs, [&](std::size_t i) { return jobs[i](); });
}

} // namespace subperm::verify
