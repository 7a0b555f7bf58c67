#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zgkn {

enum class ErrorCode {
  InvalidArgument,
  StepSizeUnderflow,
  NonFiniteField,
  NotNearTarget,
  DomainBoundary,
  BracketNotFound,
  ZeroN,
  ExcludedState,
  NonTerminating,
  InvalidIndex,
  InvalidLabel,
  CutoffTooSmall,
  NonDecayingTail,
  NoRootInGap,
  MultipleRoots,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it to an exit status without parsing messages.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when one winding class yields more than one energy root.
class MultipleRootsError : public SolverError {
 public:
  MultipleRootsError(const std::string& message, std::vector<double> energies);

  const std::vector<double>& energies() const noexcept { return energies_; }

 private:
  std::vector<double> energies_;
};

}  // namespace zgkn
