#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace jetforge {

/// Bad dimensions, out-of-range indices, malformed input.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A linear part that is (numerically) not invertible.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double det)
      : std::runtime_error(what + " (det = " + format(det) + ")"), det_(det) {}
  double det() const noexcept { return det_; }

 private:
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
    return buf;
  }

  double det_;
};

/// A product or construction left the set it was supposed to stay in.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// |det| at or below this is refused by every inversion.
inline constexpr double kInvertEps = 1e-12;
// Default comparison tolerance.
inline constexpr double kTestEps = 1e-9;

}  // namespace jetforge
