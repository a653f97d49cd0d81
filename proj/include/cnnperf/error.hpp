#pragma once

#include <stdexcept>
#include <string>

namespace cnnperf {

enum class ErrorKind {
  Validation,
  Io,
  Parse,
  NotFound,
  Fit,
  Calibration,
};

/// Base exception for every failure raised by the core library. The C API
/// maps `kind()` onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) {
  return Error(ErrorKind::Validation, what);
}

}  // namespace cnnperf
