#include "curvebump/error.hpp"

namespace curvebump {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::resource: return "resource";
    case ErrorKind::model: return "model";
    case ErrorKind::constraint: return "constraint";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::undefined: return "undefined";
  }
  return "unknown";
}

}  // namespace curvebump
