#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kato {

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  NonFiniteIntegrand,
  NonFiniteSample,
  DiagonalDivergence,
  InsufficientData,
  Oscillation,
  OutsideDomain,
  DegenerateJacobian,
  EmptyGap,
  CoincidentPoints,
  CoincidentRadii,
  NonPositiveDistance,
  DivergentNorm,
  ViolationFound,
  InvalidGrid,
  SupportViolation,
  EmptyFunction,
  HypothesisViolation,
  SyntaxError,
  UnknownFamily,
  BadArity,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace kato
