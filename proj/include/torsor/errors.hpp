#pragma once

#include <stdexcept>
#include <string>

namespace torsor {

enum class ErrorCode {
  invalid_argument,
  parse,
  guard,
  verification,
  mismatch,
};

/// Single exception type raised by the library. The code tells the C API
/// which status to report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Throws a verification error. These indicate an internal inconsistency,
/// never a user mistake.
inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::verification, what);
}

}  // namespace torsor
