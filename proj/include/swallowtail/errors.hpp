#pragma once

#include <stdexcept>
#include <string>

namespace swallowtail {

enum class ErrorCode {
  InvalidArgument,
  ToleranceNotReached,
  DegenerateScaling,
  PathStalled,
  NoConvergence,
  SeedOutOfRange,
  RegimeError,
  DomainError,
};

// Base of every error raised by the library. The code is what the C API
// reports back across the shared-library boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define SWALLOWTAIL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorCode::Name, what) {} \
  };

SWALLOWTAIL_DEFINE_ERROR(InvalidArgument)
SWALLOWTAIL_DEFINE_ERROR(ToleranceNotReached)
SWALLOWTAIL_DEFINE_ERROR(DegenerateScaling)
SWALLOWTAIL_DEFINE_ERROR(PathStalled)
SWALLOWTAIL_DEFINE_ERROR(NoConvergence)
SWALLOWTAIL_DEFINE_ERROR(SeedOutOfRange)
SWALLOWTAIL_DEFINE_ERROR(RegimeError)
SWALLOWTAIL_DEFINE_ERROR(DomainError)

#undef SWALLOWTAIL_DEFINE_ERROR

}  // namespace swallowtail
