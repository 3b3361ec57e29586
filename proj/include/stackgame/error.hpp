#pragma once

#include <stdexcept>
#include <string>

namespace stackgame {

// Every failure the library can signal, one code per contract violation so
// callers (and the CLI's exit-code mapping) can dispatch without parsing
// message text.
enum class ErrorCode {
  TooFewTargets,
  NegativeValuation,
  NonPositiveOmega,
  InvalidStrategy,
  DimensionMismatch,
  IndexOutOfRange,
  InvalidMatrix,
  InvalidMarginals,
  PivotEqualsReference,
  InfeasibleIndifference,
  ResolutionTooFine,
  InvalidArgument,
  IoFailure,
};

const char* to_string(ErrorCode code);

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stackgame
