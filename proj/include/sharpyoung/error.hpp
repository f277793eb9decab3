#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpyoung {

enum class ErrorCode {
  validation,   // malformed or inadmissible input
  certificate,  // a solver's guarantee could not be certified
  convergence,  // quadrature or iteration did not converge
  budget,       // requested work exceeds a configured cap
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  // Location of the offending field (JSON pointer-ish), empty if not applicable.
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message, std::string path = {});

inline void require(bool ok, const std::string& message, std::string path = {}) {
  if (!ok) raise(ErrorCode::validation, message, std::move(path));
}

}  // namespace sharpyoung
