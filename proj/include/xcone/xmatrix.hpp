#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "xcone/tolerance.hpp"

namespace xcone {

using Complex = std::complex<double>;

enum class Party { A, B, C };

// Three-qubit X-shaped self-adjoint matrix X(a, b, z).
//
// The basis of C^2 (x) C^2 (x) C^2 is ordered lexicographically and identified
// with C^8; positions are 1-based in the comments below, 0-based in code.
// Entry layout of the 8x8 embedding:
//   a_i at (i, i)           for i = 1..4,
//   b_i at (9-i, 9-i)       so b_1 sits at (8,8), b_4 at (5,5),
//   z_i at (i, 9-i)         with conj(z_i) mirrored at (9-i, i).
// The same container serves as a witness, read as X(s, t, u) via a<->s,
// b<->t, z<->u.
struct XMatrix {
  std::array<double, 4> a{};
  std::array<double, 4> b{};
  std::array<Complex, 4> z{};

  friend bool operator==(const XMatrix&, const XMatrix&) = default;
};

// General 8x8 self-adjoint matrix, row-major, self-adjoint by construction:
// set() writes both (i,j) and its conjugate mirror.
struct Hermitian8 {
  std::array<Complex, 64> m{};

  const Complex& at(int i, int j) const { return m[static_cast<std::size_t>(i * 8 + j)]; }

  void set(int i, int j, Complex v) {
    m[static_cast<std::size_t>(i * 8 + j)] = v;
    m[static_cast<std::size_t>(j * 8 + i)] = std::conj(v);
  }
};

inline bool all_finite(const XMatrix& x) {
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(x.a[static_cast<std::size_t>(i)]) ||
        !std::isfinite(x.b[static_cast<std::size_t>(i)]) ||
        !std::isfinite(x.z[static_cast<std::size_t>(i)].real()) ||
        !std::isfinite(x.z[static_cast<std::size_t>(i)].imag()))
      return false;
  }
  return true;
}

inline XMatrix make_x(const std::array<double, 4>& a, const std::array<double, 4>& b,
                      const std::array<Complex, 4>& z) {
  XMatrix x{a, b, z};
  if (!all_finite(x)) throw std::invalid_argument("make_x: non-finite entry");
  return x;
}

inline Hermitian8 embed(const XMatrix& x) {
  Hermitian8 h;
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(i);
    h.set(i, i, Complex(x.a[k], 0.0));
    h.set(7 - i, 7 - i, Complex(x.b[k], 0.0));
    h.set(i, 7 - i, x.z[k]);
  }
  return h;
}

// Keeps diagonal and anti-diagonal entries, discards everything else.
inline XMatrix x_part(const Hermitian8& h) {
  XMatrix x;
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(i);
    x.a[k] = h.at(i, i).real();
    x.b[k] = h.at(7 - i, 7 - i).real();
    x.z[k] = h.at(i, 7 - i);
  }
  return x;
}

// Pairing <W, R> = sum_i (s_i a_i + t_i b_i + 2 Re(u_i z_i)) with (s,t,u) the
// fields of W and (a,b,z) the fields of R. Restriction of Tr(R W^t) to X.
inline double pair_x(const XMatrix& w, const XMatrix& r) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    acc += w.a[i] * r.a[i] + w.b[i] * r.b[i];
    acc += 2.0 * (w.z[i] * r.z[i]).real();
  }
  return acc;
}

// Tr(Q P^t); real for self-adjoint inputs (the imaginary part cancels).
inline double pair_full(const Hermitian8& p, const Hermitian8& q) {
  Complex acc = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) acc += q.at(i, j) * p.at(i, j);
  return acc.real();
}

// Partial transpose on one party. On X-matrices this permutes (and for party
// A conjugates) the anti-diagonal; a and b are untouched:
//   Gamma_A: z -> (conj z4, conj z3, conj z2, conj z1)
//   Gamma_B: z -> (z3, z4, z1, z2)
//   Gamma_C: z -> (z2, z1, z4, z3)
inline XMatrix partial_transpose(const XMatrix& x, Party p) {
  XMatrix y = x;
  switch (p) {
    case Party::A:
      y.z = {std::conj(x.z[3]), std::conj(x.z[2]), std::conj(x.z[1]), std::conj(x.z[0])};
      break;
    case Party::B:
      y.z = {x.z[2], x.z[3], x.z[0], x.z[1]};
      break;
    case Party::C:
      y.z = {x.z[1], x.z[0], x.z[3], x.z[2]};
      break;
  }
  return y;
}

inline double max_magnitude(const XMatrix& x) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    m = std::max({m, std::abs(x.a[i]), std::abs(x.b[i]), std::abs(x.z[i])});
  }
  return m;
}

// Positivity of an X-matrix reduces to its four 2x2 blocks:
// a_i >= 0, b_i >= 0 and a_i b_i >= |z_i|^2.
inline bool is_psd_x(const XMatrix& x, const Tolerance& tol = {}) {
  const double scale = 1.0 + max_magnitude(x);
  for (std::size_t i = 0; i < 4; ++i) {
    if (x.a[i] < -tol.eps * scale) return false;
    if (x.b[i] < -tol.eps * scale) return false;
    if (x.a[i] * x.b[i] < std::norm(x.z[i]) - tol.eps * scale) return false;
  }
  return true;
}

inline Eigen::Matrix<Complex, 8, 8> to_eigen(const Hermitian8& h) {
  Eigen::Matrix<Complex, 8, 8> m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = h.at(i, j);
  return m;
}

inline bool is_psd_full(const Hermitian8& h, const Tolerance& tol = {}) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, 8, 8>> solver(to_eigen(h),
                                                                     Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(7)));
  return ev(0) >= -tol.eps * (1.0 + spectral);
}

// GHZ diagonal <=> a = b and z real.
inline bool is_ghz_diagonal(const XMatrix& x, const Tolerance& tol = {}) {
  const double scale = 1.0 + max_magnitude(x);
  for (std::size_t i = 0; i < 4; ++i) {
    if (!near_zero(x.a[i] - x.b[i], scale, tol)) return false;
    if (!near_zero(x.z[i].imag(), scale, tol)) return false;
  }
  return true;
}

// --- value arithmetic -------------------------------------------------------

inline XMatrix operator+(const XMatrix& x, const XMatrix& y) {
  XMatrix r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.a[i] = x.a[i] + y.a[i];
    r.b[i] = x.b[i] + y.b[i];
    r.z[i] = x.z[i] + y.z[i];
  }
  return r;
}

inline XMatrix operator-(const XMatrix& x, const XMatrix& y) {
  XMatrix r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.a[i] = x.a[i] - y.a[i];
    r.b[i] = x.b[i] - y.b[i];
    r.z[i] = x.z[i] - y.z[i];
  }
  return r;
}

inline XMatrix operator*(double s, const XMatrix& x) {
  XMatrix r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.a[i] = s * x.a[i];
    r.b[i] = s * x.b[i];
    r.z[i] = s * x.z[i];
  }
  return r;
}

inline Hermitian8 operator-(const Hermitian8& x, const Hermitian8& y) {
  Hermitian8 r;
  for (std::size_t k = 0; k < 64; ++k) r.m[k] = x.m[k] - y.m[k];
  return r;
}

// Frobenius norm of the embedded matrix (anti-diagonal entries count twice).
inline double frobenius_norm(const XMatrix& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    acc += x.a[i] * x.a[i] + x.b[i] * x.b[i] + 2.0 * std::norm(x.z[i]);
  }
  return std::sqrt(acc);
}

inline double frobenius_norm(const Hermitian8& h) {
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) acc += std::norm(h.at(i, j));
  return std::sqrt(acc);
}

// Frobenius norm of H minus its X-part; zero exactly when H is X-shaped.
inline double off_x_residual(const Hermitian8& h) {
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (i == j || i + j == 7) continue;
      acc += std::norm(h.at(i, j));
    }
  return std::sqrt(acc);
}

// --- party relabeling -------------------------------------------------------

// sigma maps slot -> party: the qubit in tensor slot k is relabeled as party
// sigma[k]. Implemented through the 8x8 embedding by shuffling index bits;
// bit permutations commute with bit complement, so X-shape is preserved.
inline XMatrix permute_parties(const XMatrix& x, const std::array<Party, 3>& sigma) {
  const Hermitian8 h = embed(x);
  // position of each party's bit in the new index (bit 2 = A, 1 = B, 0 = C)
  std::array<int, 3> shift{};
  for (int slot = 0; slot < 3; ++slot)
    shift[static_cast<std::size_t>(slot)] = 2 - static_cast<int>(sigma[static_cast<std::size_t>(slot)]);
  auto map_index = [&](int p) {
    int q = 0;
    for (int slot = 0; slot < 3; ++slot) {
      const int bit = (p >> (2 - slot)) & 1;
      q |= bit << shift[static_cast<std::size_t>(slot)];
    }
    return q;
  };
  Hermitian8 g;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g.m[static_cast<std::size_t>(map_index(i) * 8 + map_index(j))] = h.at(i, j);
  return x_part(g);
}

}  // namespace xcone
