#include "hyperfh/errors.hpp"

namespace hyperfh {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OffQuadric: return "OffQuadric";
    case ErrorCode::ChartSingular: return "ChartSingular";
    case ErrorCode::MeasureSingular: return "MeasureSingular";
    case ErrorCode::InvalidGroupElement: return "InvalidGroupElement";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DecayViolated: return "DecayViolated";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PointOnBoundary: return "PointOnBoundary";
    case ErrorCode::NotInTuboid: return "NotInTuboid";
    case ErrorCode::BranchViolation: return "BranchViolation";
    case ErrorCode::RealConeForbidden: return "RealConeForbidden";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::TailNotGeometric: return "TailNotGeometric";
    case ErrorCode::OrbitBoundary: return "OrbitBoundary";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hyperfh
