#pragma once

#include <limits>
#include <string>

namespace hypschwarz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Ball dimension together with a conjugate exponent pair (p, q).
///
/// 1/p + 1/q = 1 with 1/inf = 0, so p = 1 pairs with q = inf and p = inf
/// with q = 1. The pair is always derived from p; q is never stored
/// independently.
class BallContext {
 public:
  BallContext(int n, double p);

  static BallContext from_q(int n, double q);

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  bool p_is_one() const noexcept { return p_ == 1.0; }
  bool p_is_inf() const noexcept { return p_ == kInf; }
  /// 1 < p < inf, the range where the optimal shift is found numerically.
  bool p_is_interior() const noexcept { return !p_is_one() && !p_is_inf(); }

  std::string describe() const;

 private:
  int n_;
  double p_;
  double q_;
};

double conjugate_exponent(double p);

/// Formats p for messages and tables: "inf" or shortest decimal.
std::string format_exponent(double p);

}  // namespace hypschwarz
