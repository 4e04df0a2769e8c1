#ifndef AFFSCALE_TYPES_HPP
#define AFFSCALE_TYPES_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace affscale {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorKind {
  NotInterior,
  NumericalFailure,
  DomainError,
  DimensionMismatch,
  NonRealEigenvalues,
  DegenerateLeadingCoefficient,
  ConvexityViolation,
  StepBoundViolation,
  NotInSwath,
  ParseError,
  InvariantViolation,
  RetryExhausted,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports carries one of the kinds above; callers
// that need to branch (the CLI exit codes, the driver status) switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonRealEigenvalues: return "NonRealEigenvalues";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::ConvexityViolation: return "ConvexityViolation";
    case ErrorKind::StepBoundViolation: return "StepBoundViolation";
    case ErrorKind::NotInSwath: return "NotInSwath";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::RetryExhausted: return "RetryExhausted";
  }
  return "Unknown";
}

inline void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected " + std::to_string(want) +
                    ", got " + std::to_string(got));
  }
}

}  // namespace affscale

#endif  // AFFSCALE_TYPES_HPP
