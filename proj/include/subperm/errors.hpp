#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subperm {

// Base of every error raised by the library. kind() is the stable tag used in
// structured error output.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept { return "Error"; }
};

#define SUBPERM_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
    std::string_view kind() const noexcept override { return #Name; }         \
  }

SUBPERM_DEFINE_ERROR(DomainError);
SUBPERM_DEFINE_ERROR(SurplusMismatch);
SUBPERM_DEFINE_ERROR(NoConsistentModel);
SUBPERM_DEFINE_ERROR(InfeasibleEnsemble);
SUBPERM_DEFINE_ERROR(UnsupportedMeasure);
SUBPERM_DEFINE_ERROR(HypothesisViolated);
SUBPERM_DEFINE_ERROR(DegenerateRemainder);

#undef SUBPERM_DEFINE_ERROR

// Raised before any enumeration starts, when the estimated number of kernel
// evaluations exceeds the caller's budget.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& what, double required, std::uint64_t budget)
      : Error(what + " (estimated work " + format_work(required) + " kernel evaluations, budget " +
              std::to_string(budget) + ")"),
        required_(required), budget_(budget) {}

  std::string_view kind() const noexcept override { return "BudgetExceeded"; }
  double required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

private:
  static std::string format_work(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", w);
    return buf;
  }

  double required_;
  std::uint64_t budget_;
};

} // namespace subperm
