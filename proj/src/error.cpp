#include "sharpyoung/error.hpp"

namespace sharpyoung {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::certificate: return "certificate";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::budget: return "budget";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string path)
    : std::runtime_error(message), code_(code), path_(std::move(path)) {}

void raise(ErrorCode code, const std::string& message, std::string path) {
  throw Error(code, message, std::move(path));
}

}  // namespace sharpyoung
