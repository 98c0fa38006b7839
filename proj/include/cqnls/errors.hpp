#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cqnls {

enum class ErrorCode {
  FrequencyOutOfWindow,
  BracketFailure,
  DomainTooSmall,
  ResidualGate,
  ConvergenceFailure,
  NonFiniteIntegrand,
  KindMismatch,
  AlphaOutOfRange,
  EmptyGrid,
  InsufficientPoints,
  TargetNotBracketed,
  InsufficientCoverage,
  MassBeyondScan,
  FlowDiverged,
  ConservationBreach,
  InnerSolveDiverged,
  EigSolverStalled,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Six significant digits for error messages.
inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cqnls
