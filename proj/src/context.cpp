#include "context.hpp"

#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace hypschwarz {

double conjugate_exponent(double p) {
  require(p >= 1.0, "exponent must be >= 1, got " + format_exponent(p));
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

BallContext::BallContext(int n, double p) : n_(n), p_(p), q_(0.0) {
  if (!(n >= 3)) {
    fail(ErrorKind::domain, "dimension n must be >= 3, got " + std::to_string(n));
  }
  require(!std::isnan(p), "exponent p is NaN");
  q_ = conjugate_exponent(p);
}

BallContext BallContext::from_q(int n, double q) {
  return BallContext(n, conjugate_exponent(q));
}

std::string BallContext::describe() const {
  return "n=" + std::to_string(n_) + ", p=" + format_exponent(p_) +
         ", q=" + format_exponent(q_);
}

std::string format_exponent(double p) {
  if (p == kInf) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", p);
  return buf;
}

}  // namespace hypschwarz
