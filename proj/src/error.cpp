#include "pbpo/error.hpp"

namespace pbpo {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::ReservedLabelCollision: return "ReservedLabelCollision";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::ComposabilityMismatch: return "ComposabilityMismatch";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::NotACone: return "NotACone";
    case ErrorCode::NoMediator: return "NoMediator";
    case ErrorCode::NonCommutingSquare: return "NonCommutingSquare";
    case ErrorCode::NonHeytingLattice: return "NonHeytingLattice";
    case ErrorCode::NotRegularMono: return "NotRegularMono";
    case ErrorCode::PullbackCertificateFailed: return "PullbackCertificateFailed";
    case ErrorCode::NotAPullback: return "NotAPullback";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::NotAStrongMatch: return "NotAStrongMatch";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::NotAMatch: return "NotAMatch";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::NoSuchMatch: return "NoSuchMatch";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::EnumerationLimitExceeded: return "EnumerationLimitExceeded";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace pbpo
