#pragma once

#include <stdexcept>
#include <string>

namespace qfock {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Domain,        // |q| >= 1 and similar
  Size,          // factorial, basis or word-length cap exceeded
  Conditioning,  // Gram block not safely positive definite
  Precondition,  // mathematical hypothesis not met (e.g. scalar word)
  Window,        // mode outside the Fock window
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws a Domain error unless |q| < 1.
void require_q_in_domain(double q);

}  // namespace qfock
