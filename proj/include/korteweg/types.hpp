#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace korteweg {

using cplx = std::complex<double>;
using ScalarField = std::vector<cplx>;

enum class ErrorKind {
  NonPositiveCoefficient,
  EtaVanishes,
  KappaEqualsMuNu,
  BranchCutHit,
  LambdaOutsideSector,
  SingularLopatinskii,
  NeumannDiverged,
  EmptyGrid,
  DerivativeStepUnderflow,
  StepOutsideSector,
  ZeroDenominator,
  GridMismatch,
  InvalidArgument,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind kind);

// Every library failure carries a kind so callers (the CLI in particular)
// can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorKind::EtaVanishes: return "EtaVanishes";
    case ErrorKind::KappaEqualsMuNu: return "KappaEqualsMuNu";
    case ErrorKind::BranchCutHit: return "BranchCutHit";
    case ErrorKind::LambdaOutsideSector: return "LambdaOutsideSector";
    case ErrorKind::SingularLopatinskii: return "SingularLopatinskii";
    case ErrorKind::NeumannDiverged: return "NeumannDiverged";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::DerivativeStepUnderflow: return "DerivativeStepUnderflow";
    case ErrorKind::StepOutsideSector: return "StepOutsideSector";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace korteweg
