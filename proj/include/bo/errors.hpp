#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bo {

enum class ErrorKind {
  // domain invariants (caller supplied something outside the admissible class)
  InvalidParameters,
  DegenerateParameters,
  DegreeError,
  NotSquareIntegrable,
  PoleProximity,
  OrderingViolation,
  GridMismatch,
  // numerical failures
  RootFindingFailed,
  InvariantViolation,
  DegenerateSpectrum,
  PositivityFailure,
  GramIllConditioned,
  RootsNotInLowerHalfPlane,
  SingularResolvent,
  FDStepTooLarge,
  BoundaryNotDecayed,
  BlowupDetected,
  BoundaryContamination,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::DegreeError: return "DegreeError";
    case ErrorKind::NotSquareIntegrable: return "NotSquareIntegrable";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::RootFindingFailed: return "RootFindingFailed";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::PositivityFailure: return "PositivityFailure";
    case ErrorKind::GramIllConditioned: return "GramIllConditioned";
    case ErrorKind::RootsNotInLowerHalfPlane: return "RootsNotInLowerHalfPlane";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::FDStepTooLarge: return "FDStepTooLarge";
    case ErrorKind::BoundaryNotDecayed: return "BoundaryNotDecayed";
    case ErrorKind::BlowupDetected: return "BlowupDetected";
    case ErrorKind::BoundaryContamination: return "BoundaryContamination";
  }
  return "Unknown";
}

/// True for errors that signal an inadmissible input rather than a numerical breakdown.
constexpr bool is_domain_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters:
    case ErrorKind::DegenerateParameters:
    case ErrorKind::DegreeError:
    case ErrorKind::NotSquareIntegrable:
    case ErrorKind::PoleProximity:
    case ErrorKind::OrderingViolation:
    case ErrorKind::GridMismatch:
    case ErrorKind::BoundaryNotDecayed:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bo
