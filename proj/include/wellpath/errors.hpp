#pragma once
// Typed errors. The CLI maps the code to its process exit status and prints a
// machine-readable error line, so library code should always throw through
// these helpers rather than using bare std exceptions.

#include <stdexcept>
#include <string>

namespace wellpath {

enum class ErrorCode {
  invalid_spec = 2,       // malformed configuration / domain / family description
  invalid_parameter = 3,  // well-formed input outside an operation's precondition
  io_failure = 4,         // filesystem problem
  numerical_failure = 5,  // a solver failed to meet its contract
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail_spec(const std::string& msg) {
  throw Error(ErrorCode::invalid_spec, msg);
}
[[noreturn]] inline void fail_param(const std::string& msg) {
  throw Error(ErrorCode::invalid_parameter, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(ErrorCode::io_failure, msg);
}
[[noreturn]] inline void fail_numeric(const std::string& msg) {
  throw Error(ErrorCode::numerical_failure, msg);
}

}  // namespace wellpath
