#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rescue {

// Exit-code families used by the command-line tool:
// input errors (bad documents, invalid posets/models), violated solver
// assumptions, size guards, and internal inconsistencies.
enum class ErrorClass { Input = 1, Assumption = 2, Guard = 3, Internal = 4 };

struct Error : std::runtime_error {
  ErrorClass cls;
  std::string kind;

  Error(ErrorClass c, std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), cls(c), kind(std::move(k)) {}
};

[[noreturn]] inline void fail_input(const std::string& kind, const std::string& msg) {
  throw Error(ErrorClass::Input, kind, msg);
}

[[noreturn]] inline void fail_assumption(const std::string& kind, const std::string& msg) {
  throw Error(ErrorClass::Assumption, kind, msg);
}

[[noreturn]] inline void fail_guard(const std::string& kind, const std::string& msg) {
  throw Error(ErrorClass::Guard, kind, msg);
}

[[noreturn]] inline void fail_internal(const std::string& kind, const std::string& msg) {
  throw Error(ErrorClass::Internal, kind, msg);
}

}  // namespace rescue
