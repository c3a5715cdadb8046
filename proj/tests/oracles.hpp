// Test-only reference implementations, independent of the library's X-level
// shortcuts: dense 8x8 trace pairing, bit-shuffle partial transpose, and
// product-state constructions.
#pragma once

#include <array>
#include <complex>

#include "xcone/rng.hpp"
#include "xcone/xmatrix.hpp"

namespace oracles {

using xcone::Complex;
using xcone::Hermitian8;
using xcone::Party;
using xcone::XMatrix;

// Tr(Q P^t) evaluated through an explicit matrix product.
inline double brute_force_pairing(const Hermitian8& p, const Hermitian8& q) {
  Complex trace = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) trace += q.at(i, k) * p.at(i, k);  // (P^t)_{ki} = P_{ik}
  return trace.real();
}

// Partial transpose on the full 8x8 matrix: swap the party's bit between row
// and column index.
inline Hermitian8 reference_partial_transpose(const Hermitian8& h, Party party) {
  const int bit = 2 - static_cast<int>(party);  // index bits are (A,B,C) from MSB
  Hermitian8 out;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const int rb = (r >> bit) & 1, cb = (c >> bit) & 1;
      const int r2 = (r & ~(1 << bit)) | (cb << bit);
      const int c2 = (c & ~(1 << bit)) | (rb << bit);
      out.m[static_cast<std::size_t>(r2 * 8 + c2)] = h.at(r, c);
    }
  return out;
}

inline Hermitian8 projector(const std::array<Complex, 8>& v) {
  Hermitian8 h;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      h.m[static_cast<std::size_t>(i * 8 + j)] =
          v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
  return h;
}

inline std::array<Complex, 8> kron3(const std::array<Complex, 2>& x,
                                    const std::array<Complex, 2>& y,
                                    const std::array<Complex, 2>& w) {
  std::array<Complex, 8> v{};
  for (int p = 0; p < 8; ++p)
    v[static_cast<std::size_t>(p)] = x[static_cast<std::size_t>((p >> 2) & 1)] *
                                     y[static_cast<std::size_t>((p >> 1) & 1)] *
                                     w[static_cast<std::size_t>(p & 1)];
  return v;
}

inline std::array<Complex, 8> kron_a_bc(const std::array<Complex, 2>& x,
                                        const std::array<Complex, 4>& y) {
  std::array<Complex, 8> v{};
  for (int p = 0; p < 8; ++p)
    v[static_cast<std::size_t>(p)] =
        x[static_cast<std::size_t>(p >> 2)] * y[static_cast<std::size_t>(p & 3)];
  return v;
}

inline Complex random_complex(xcone::SplitMix64& rng) {
  return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
}

inline Hermitian8 random_hermitian(xcone::SplitMix64& rng) {
  Hermitian8 h;
  for (int i = 0; i < 8; ++i) {
    h.set(i, i, Complex(rng.uniform(-1.0, 1.0), 0.0));
    for (int j = i + 1; j < 8; ++j) h.set(i, j, random_complex(rng));
  }
  return h;
}

inline XMatrix ghz() {
  return xcone::make_x({1, 0, 0, 0}, {1, 0, 0, 0}, {Complex(1), Complex(0), Complex(0), Complex(0)});
}

// X((0,1,1,2),(0,1,1,2),(0,1,1,0)): the golden classification input.
inline XMatrix golden_state() {
  return xcone::make_x({0, 1, 1, 2}, {0, 1, 1, 2},
                       {Complex(0), Complex(1), Complex(1), Complex(0)});
}

}  // namespace oracles
