#pragma once

#include <cmath>
#include <numbers>

#include "xcone/rng.hpp"
#include "xcone/xmatrix.hpp"

namespace xcone {

// Unconstrained X-matrix: diagonals of mixed sign, anti-diagonal moduli that
// wander across the positivity boundary.
inline XMatrix random_x(SplitMix64& rng) {
  XMatrix x;
  for (std::size_t i = 0; i < 4; ++i) {
    x.a[i] = rng.uniform(-0.3, 2.0);
    x.b[i] = rng.uniform(-0.3, 2.0);
    x.z[i] = std::polar(rng.uniform(0.0, 1.8), rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return x;
}

// Positive semidefinite by construction: |z_i| <= sqrt(a_i b_i).
inline XMatrix random_psd_x(SplitMix64& rng) {
  XMatrix x;
  for (std::size_t i = 0; i < 4; ++i) {
    x.a[i] = rng.uniform(0.0, 2.0);
    x.b[i] = rng.uniform(0.0, 2.0);
    const double cap = std::sqrt(x.a[i] * x.b[i]);
    x.z[i] = std::polar(cap * rng.u01(), rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return x;
}

// Nonnegative diagonals, anti-diagonal unconstrained; lands on both sides of
// every dual-cone criterion.
inline XMatrix random_witness_candidate(SplitMix64& rng) {
  XMatrix w;
  for (std::size_t i = 0; i < 4; ++i) {
    w.a[i] = rng.uniform(0.0, 2.0);
    w.b[i] = rng.uniform(0.0, 2.0);
    w.z[i] = std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return w;
}

}  // namespace xcone
