#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace weilreg {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  /// Stable error identifier (e.g. "NotBirational"), used in reports.
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A negative verdict: the input was understood but violates a checked
/// hypothesis (an action law, a regularity condition). Reports record these
/// as "fail" rather than "error".
class VerdictError : public Error {
 public:
  using Error::Error;
};

#define WEILREG_DEFINE_ERROR(Name, Base)                              \
  class Name : public Base {                                         \
   public:                                                           \
    explicit Name(const std::string& what) : Base(#Name, what) {}    \
  };

// exactalg
WEILREG_DEFINE_ERROR(ArityMismatch, Error)
WEILREG_DEFINE_ERROR(BudgetExceeded, Error)
WEILREG_DEFINE_ERROR(ParseError, Error)

// varmaps
WEILREG_DEFINE_ERROR(InvalidVariety, Error)
WEILREG_DEFINE_ERROR(RepresentativeMismatch, Error)
WEILREG_DEFINE_ERROR(NotIntoTarget, Error)
WEILREG_DEFINE_ERROR(ZeroDenominator, Error)
WEILREG_DEFINE_ERROR(NotDominant, Error)
WEILREG_DEFINE_ERROR(NotComposable, Error)
WEILREG_DEFINE_ERROR(VarietyMismatch, Error)
WEILREG_DEFINE_ERROR(NotBirational, Error)
WEILREG_DEFINE_ERROR(PointNotOnVariety, Error)
WEILREG_DEFINE_ERROR(EmptyOpen, Error)

// groups_actions
WEILREG_DEFINE_ERROR(AxiomFailure, VerdictError)
WEILREG_DEFINE_ERROR(NotAnAction, VerdictError)
WEILREG_DEFINE_ERROR(PointNotOnGroup, Error)
WEILREG_DEFINE_ERROR(EmptyLocus, Error)

// weil_regularize
WEILREG_DEFINE_ERROR(RoundTripFailure, Error)
WEILREG_DEFINE_ERROR(NotInSpan, Error)
WEILREG_DEFINE_ERROR(Unsupported, Error)

// slice_regularity
WEILREG_DEFINE_ERROR(NotFPower, Error)
WEILREG_DEFINE_ERROR(BudgetExhausted, Error)
WEILREG_DEFINE_ERROR(SliceNotRegular, VerdictError)
WEILREG_DEFINE_ERROR(NonPolynomialResidue, VerdictError)
WEILREG_DEFINE_ERROR(NotRegularOnSample, VerdictError)

// cli_dsl
WEILREG_DEFINE_ERROR(UseBeforeDeclare, Error)
WEILREG_DEFINE_ERROR(KindMismatch, Error)

#undef WEILREG_DEFINE_ERROR

/// Positioned session-language diagnostic.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what, std::vector<std::string> expected = {})
      : Error("SyntaxError", std::to_string(line) + ":" + std::to_string(column) + ": " + what + expected_text(expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string expected_text(const std::vector<std::string>& e) {
    if (e.empty()) return "";
    std::string s = " (expected one of:";
    for (const auto& x : e) s += " " + x;
    return s + ")";
  }

  std::size_t line_, column_;
  std::vector<std::string> expected_;
};

}  // namespace weilreg
