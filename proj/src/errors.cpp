#include "ptgauge/errors.hpp"

namespace ptgauge {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::ExponentialDidNotConverge: return "ExponentialDidNotConverge";
    case ErrorKind::CutoffNotConverged: return "CutoffNotConverged";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NonNormalizable: return "NonNormalizable";
    case ErrorKind::CoefficientMismatch: return "CoefficientMismatch";
  }
  return "Unknown";
}

}  // namespace ptgauge
