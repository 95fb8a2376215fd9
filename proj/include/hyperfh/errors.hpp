#pragma once

#include <stdexcept>
#include <string>

namespace hyperfh {

enum class ErrorCode {
  OffQuadric,
  ChartSingular,
  MeasureSingular,
  InvalidGroupElement,
  NoConvergence,
  DecayViolated,
  DomainError,
  PointOnBoundary,
  NotInTuboid,
  BranchViolation,
  RealConeForbidden,
  DecompositionFailed,
  TailNotGeometric,
  OrbitBoundary,
  AssertionFailure,
  ParseError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperfh
