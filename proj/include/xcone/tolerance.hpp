#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xcone {

// Floating-point comparison policy. All membership and pattern tests compare
// slacks against -eps * scale with scale = 1 + max participating magnitude,
// so decisions are invariant under positive rescaling of the input ray.
struct Tolerance {
  double eps = 1e-9;

  Tolerance() = default;
  explicit Tolerance(double e) : eps(e) {
    if (!(e >= 0.0)) throw std::invalid_argument("Tolerance: eps must be >= 0");
  }
};

inline double scale_of(double m) { return 1.0 + std::abs(m); }

inline double scale_of(double m1, double m2) {
  return 1.0 + std::max(std::abs(m1), std::abs(m2));
}

// x >= y within eps at the given magnitude scale.
inline bool ge_tol(double x, double y, double scale, const Tolerance& tol) {
  return x - y >= -tol.eps * scale;
}

inline bool near_zero(double x, double scale, const Tolerance& tol) {
  return std::abs(x) <= tol.eps * scale;
}

}  // namespace xcone
