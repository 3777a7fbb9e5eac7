#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace covdyn {

// Domain error with a stable machine-readable code ("OutOfRangeState",
// "LengthMismatch", ...). The CLI maps these to exit code 2 and a
// {"error": code, "detail": ...} payload.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void throw_error(std::string code, const std::string& detail) {
  throw Error(std::move(code), detail);
}

}  // namespace covdyn
