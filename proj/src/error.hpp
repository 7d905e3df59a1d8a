#pragma once

#include <stdexcept>
#include <string>

namespace hypschwarz {

enum class ErrorKind {
  domain,       // precondition violated
  convergence,  // iteration cap reached
  quadrature,   // non-finite integrand or degenerate rule
  bracket,      // root not bracketed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::domain, what);
}

}  // namespace hypschwarz
