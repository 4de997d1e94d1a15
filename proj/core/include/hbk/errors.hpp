#pragma once

#include <stdexcept>
#include <string>

namespace hbk {

/// Base class for all library errors. `code()` is a stable machine-readable
/// tag (e.g. "NotPrime", "TooManyFlows") used by the CLI for error mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline Error make_error(const std::string& code, const std::string& what) {
  return Error(code, code + ": " + what);
}

}  // namespace hbk
