#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "subperm/verify/suite.hpp"

using namespace subperm;
using namespace subperm::verify;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Selector = std::function<bool(const VerificationReport&)>;

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// Every selected report must pass.
Outcome all_pass(const std::vector<VerificationReport>& reports, const Selector& keep) {
  Outcome out{true, ""};
  int count = 0;
  for (const auto& rep : reports) {
    if (!keep(rep)) continue;
    ++count;
    if (rep.verdict != Verdict::Pass) {
      out.pass = false;
      out.detail += " " + rep.claim_id + "=" + std::string(verdict_name(rep.verdict));
    }
  }
  if (count == 0) return {false, " no reports selected"};
  if (out.pass) out.detail = " " + std::to_string(count) + " checks";
  return out;
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string(" error: ") + e.what()};
  }
}

} // namespace

int main() {
  SuiteConfig cfg;
  MomentCache cache(cfg.oracle);
  std::vector<std::pair<std::string, Outcome>> results;

  std::optional<QReconstruction> q;
  const Outcome rec = guarded([&] {
    q = reconstruct_q1_q2(2, 5, 3, cfg.nodes, cache);
    return Outcome{true, ""};
  });
  results.push_back({"Q1 reproduction r=2 m=(5,3)", guarded([&]() -> Outcome {
                       if (!rec.pass) return rec;
                       const bool ok = q->q1.polynomial() && *q->q1.polynomial() == reference_q1_r2_m5_3() &&
                                       q->q1.held_out_verified;
                       return {ok, " degree " + std::to_string(q->q1.degree().value_or(-1))};
                     })});
  results.push_back({"Q2 reproduction r=2 m=(5,3)", guarded([&]() -> Outcome {
                       if (!rec.pass) return rec;
                       const bool ok = q->q2.polynomial() && *q->q2.polynomial() == reference_q2_r2_m5_3() &&
                                       q->q2.held_out_verified;
                       return {ok, " leading " + to_string(q->q2.leading())};
                     })});

  const auto degree = run_suite("degree", cfg);
  results.push_back({"degree law r=2 m1+m2<=8", all_pass(degree, [](auto&) { return true; })});

  const auto fact = run_suite("factorization", cfg);
  results.push_back({"factorization order E1",
                     all_pass(fact, [](const VerificationReport& r) { return starts_with(r.claim_id, "factorization/e1/"); })});

  const auto canc = run_suite("cancellation", cfg);
  results.push_back({"cancellation O(1/n^2)",
                     all_pass(canc, [](const VerificationReport& r) { return starts_with(r.claim_id, "cancellation/"); })});
  results.push_back({"first-order limits",
                     all_pass(canc, [](const VerificationReport& r) { return starts_with(r.claim_id, "first-order/"); })});

  SuiteConfig series_cfg = cfg;
  series_cfg.series_orders = {3, 4, 5};
  results.push_back({"series mismatch r=2 m=3..5", all_pass(run_suite("series", series_cfg), [](auto&) { return true; })});

  results.push_back({"appendix identities", all_pass(run_suite("appendix", cfg), [](auto&) { return true; })});

  const auto orc = run_suite("oracles", cfg);
  results.push_back({"oracle equivalence", all_pass(orc, [](const VerificationReport& r) {
                       return r.claim_id == "oracles/naive-equivalence" || r.claim_id == "oracles/monte-carlo";
                     })});

  results.push_back({"E_B contrast slope -1",
                     all_pass(fact, [](const VerificationReport& r) { return starts_with(r.claim_id, "factorization/eb/"); })});

  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, out] = results[i];
    if (!out.pass) ++failures;
    std::printf("%s criterion %zu: %s:%s\n", out.pass ? "PASS" : "FAIL", i + 1, name.c_str(), out.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
