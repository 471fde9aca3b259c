#pragma once

#include <stdexcept>
#include <string>

namespace ptgauge {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  DegenerateParameters,
  ExponentialDidNotConverge,
  CutoffNotConverged,
  QuadratureNotConverged,
  StepSizeUnderflow,
  NonNormalizable,
  CoefficientMismatch,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind is stable across the
/// C boundary and maps one-to-one onto a ptg_status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define PTGAUGE_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what)                           \
        : Error(ErrorKind::Name, what) {}                            \
  };

PTGAUGE_DEFINE_ERROR(InvalidArgument)
PTGAUGE_DEFINE_ERROR(DimensionMismatch)
PTGAUGE_DEFINE_ERROR(DegenerateParameters)
PTGAUGE_DEFINE_ERROR(ExponentialDidNotConverge)
PTGAUGE_DEFINE_ERROR(CutoffNotConverged)
PTGAUGE_DEFINE_ERROR(QuadratureNotConverged)
PTGAUGE_DEFINE_ERROR(StepSizeUnderflow)
PTGAUGE_DEFINE_ERROR(NonNormalizable)
PTGAUGE_DEFINE_ERROR(CoefficientMismatch)

#undef PTGAUGE_DEFINE_ERROR

}  // namespace ptgauge
