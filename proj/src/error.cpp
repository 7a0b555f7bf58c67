#include "zgkn/error.hpp"

#include <utility>

namespace zgkn {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::NonFiniteField: return "NonFiniteField";
    case ErrorCode::NotNearTarget: return "NotNearTarget";
    case ErrorCode::DomainBoundary: return "DomainBoundary";
    case ErrorCode::BracketNotFound: return "BracketNotFound";
    case ErrorCode::ZeroN: return "ZeroN";
    case ErrorCode::ExcludedState: return "ExcludedState";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::NonDecayingTail: return "NonDecayingTail";
    case ErrorCode::NoRootInGap: return "NoRootInGap";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
  }
  return "Unknown";
}

SolverError::SolverError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

MultipleRootsError::MultipleRootsError(const std::string& message, std::vector<double> energies)
    : SolverError(ErrorCode::MultipleRoots, message), energies_(std::move(energies)) {}

}  // namespace zgkn
