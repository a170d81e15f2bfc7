#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "subperm/arith/polynomial.hpp"
#include "subperm/arith/rational.hpp"

namespace subperm::verify {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Inconclusive, InconclusiveBudget };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Pass: return "pass";
  case Verdict::Fail: return "fail";
  case Verdict::Inconclusive: return "inconclusive";
  case Verdict::InconclusiveBudget: return "inconclusive-budget";
  }
  return "?";
}

struct VerificationReport {
  std::string claim_id;
  Json inputs = Json::object();
  Verdict verdict = Verdict::Inconclusive;
  Json evidence = Json::object();
  double runtime_seconds = 0;

  bool passed() const { return verdict == Verdict::Pass; }
};

inline Json rational_json(const ExactRational& q) { return to_string(q); }

inline Json polynomial_json(const PolynomialQ& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

inline Json rational_function_json(const RationalFunctionQ& f) {
  return Json{{"numerator", polynomial_json(f.numerator())}, {"denominator", polynomial_json(f.denominator())}};
}

// Wall-clock runtime is left out unless asked for, so that identical runs
// serialize to identical bytes.
inline Json to_json(const VerificationReport& r, bool with_runtime = false) {
  Json out{{"claim_id", r.claim_id},
           {"inputs", r.inputs},
           {"verdict", verdict_name(r.verdict)},
           {"evidence", r.evidence}};
  if (with_runtime) out["runtime_seconds"] = r.runtime_seconds;
  return out;
}

// Worst verdict first: fail, then any inconclusive, then pass.
inline int exit_code(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return 1;
    if (r.verdict != Verdict::Pass) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

} // namespace subperm::verify
