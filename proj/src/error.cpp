#include "kato/error.hpp"

namespace kato {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::NonConvergence: return "NonConvergence";
  case ErrorKind::NonFiniteIntegrand: return "NonFiniteIntegrand";
  case ErrorKind::NonFiniteSample: return "NonFiniteSample";
  case ErrorKind::DiagonalDivergence: return "DiagonalDivergence";
  case ErrorKind::InsufficientData: return "InsufficientData";
  case ErrorKind::Oscillation: return "Oscillation";
  case ErrorKind::OutsideDomain: return "OutsideDomain";
  case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
  case ErrorKind::EmptyGap: return "EmptyGap";
  case ErrorKind::CoincidentPoints: return "CoincidentPoints";
  case ErrorKind::CoincidentRadii: return "CoincidentRadii";
  case ErrorKind::NonPositiveDistance: return "NonPositiveDistance";
  case ErrorKind::DivergentNorm: return "DivergentNorm";
  case ErrorKind::ViolationFound: return "ViolationFound";
  case ErrorKind::InvalidGrid: return "InvalidGrid";
  case ErrorKind::SupportViolation: return "SupportViolation";
  case ErrorKind::EmptyFunction: return "EmptyFunction";
  case ErrorKind::HypothesisViolation: return "HypothesisViolation";
  case ErrorKind::SyntaxError: return "SyntaxError";
  case ErrorKind::UnknownFamily: return "UnknownFamily";
  case ErrorKind::BadArity: return "BadArity";
  }
  return "Unknown";
}

} // namespace kato
