#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbpo {

enum class ErrorCode {
  UnknownLabel,
  ReservedLabelCollision,
  InvalidSize,
  NotALattice,
  InvalidGraph,
  InvalidMorphism,
  ComposabilityMismatch,
  LatticeMismatch,
  NotACone,
  NoMediator,
  NonCommutingSquare,
  NonHeytingLattice,
  NotRegularMono,
  PullbackCertificateFailed,
  NotAPullback,
  NonCommuting,
  NotAStrongMatch,
  CertificateFailure,
  NotAMatch,
  NotCanonical,
  NoSuchMatch,
  UnknownFixture,
  EnumerationLimitExceeded,
  FormatError,
};

std::string_view error_code_name(ErrorCode code);

// Domain errors are everything except FormatError; the CLI maps them to exit 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace pbpo
