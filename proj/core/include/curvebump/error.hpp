#pragma once

#include <stdexcept>
#include <string>

namespace curvebump {

enum class ErrorKind {
  input,          // malformed or non-finite input data
  configuration,  // unsupported option or combination of options
  degenerate,     // sample carries too little information
  resource,       // requested work exceeds the configured guard
  model,          // invalid analytic model (weights, covariances)
  constraint,     // a theoretical constraint on a parameter is violated
  unsupported,    // operation not defined for this functional
  undefined,      // mathematically undefined result (e.g. empty set distance)
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace curvebump
