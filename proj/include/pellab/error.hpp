#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pellab {

/// Failure categories raised by the library. The CLI reports them by name.
enum class ErrorKind {
  InvalidInput,
  DivisionByZeroPoly,
  ZeroPolynomial,
  OddDegree,
  LeadingCoeffNotSquare,
  PerfectSquareR,
  NotExpandable,
  NotNormalized,
  SeriesExhausted,
  NotMonic,
  IrrationalCoupling,
  SingularSystem,
  NotAdmissible,
  InconsistentScale,
  NonsquareObstruction,
  RootFindingFailure,
  OnSpectrum,
  DegreeConstraintViolated,
};

constexpr std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::OddDegree: return "OddDegree";
    case ErrorKind::LeadingCoeffNotSquare: return "LeadingCoeffNotSquare";
    case ErrorKind::PerfectSquareR: return "PerfectSquareR";
    case ErrorKind::NotExpandable: return "NotExpandable";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::SeriesExhausted: return "SeriesExhausted";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::IrrationalCoupling: return "IrrationalCoupling";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::InconsistentScale: return "InconsistentScale";
    case ErrorKind::NonsquareObstruction: return "NonsquareObstruction";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::OnSpectrum: return "OnSpectrum";
    case ErrorKind::DegreeConstraintViolated: return "DegreeConstraintViolated";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept { return pellab::kind_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pellab
