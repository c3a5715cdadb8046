#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "xcone/cones.hpp"
#include "xcone/tolerance.hpp"
#include "xcone/xmatrix.hpp"

namespace xcone {

// One inequality of the six families, indices 1-based as in the usual
// notation S1[i,j], W2[i,j], ... For S2/W2 complementary pairs give the same
// condition set: S2[i,j] is literally the same formula as S2[k,l] for the
// complementary pair, and the W2 box is symmetric in (i,j).
struct IneqKind {
  enum class Family { S1, S2, S3, W1, W2, W3 };

  Family family;
  int i = 0;
  int j = 0;

  static IneqKind s1(int i, int j) { return make(Family::S1, i, j); }
  static IneqKind s2(int i, int j) { return make(Family::S2, i, j); }
  static IneqKind s3(int i) { return make(Family::S3, i, 0); }
  static IneqKind w1(int i, int j) { return make(Family::W1, i, j); }
  static IneqKind w2(int i, int j) { return make(Family::W2, i, j); }
  static IneqKind w3() { return IneqKind{Family::W3, 0, 0}; }

  friend bool operator==(const IneqKind&, const IneqKind&) = default;

 private:
  static IneqKind make(Family f, int i, int j) {
    const bool needs_pair = (f != Family::S3 && f != Family::W3);
    if (f == Family::S3) {
      if (i < 1 || i > 4) throw std::invalid_argument("IneqKind: index out of range");
      return IneqKind{f, i, 0};
    }
    if (needs_pair) {
      if (i < 1 || i > 4 || j < 1 || j > 4 || i == j)
        throw std::invalid_argument("IneqKind: indices must be distinct in 1..4");
      if (i > j) std::swap(i, j);  // all pair families are symmetric
    }
    return IneqKind{f, i, j};
  }
};

inline std::string ineq_name(const IneqKind& k) {
  using F = IneqKind::Family;
  switch (k.family) {
    case F::S1: return "S1[" + std::to_string(k.i) + "," + std::to_string(k.j) + "]";
    case F::S2: return "S2[" + std::to_string(k.i) + "," + std::to_string(k.j) + "]";
    case F::S3: return "S3[" + std::to_string(k.i) + "]";
    case F::W1: return "W1[" + std::to_string(k.i) + "," + std::to_string(k.j) + "]";
    case F::W2: return "W2[" + std::to_string(k.i) + "," + std::to_string(k.j) + "]";
    case F::W3: return "W3";
  }
  return "?";
}

// Evaluated inequality. For W2 both displayed inequalities are folded into a
// single report: slack is the worse of the two, lhs/rhs come from that side,
// and both raw slacks are kept.
struct IneqReport {
  IneqKind kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  std::array<double, 2> raw_slacks{};
};

struct MembershipVerdict {
  bool member = false;
  bool psd_checked = false;  // positivity (or witness diagonal) precondition ran
  bool psd_ok = false;
  std::vector<IneqReport> reports;
};

namespace detail {

// sqrt(a_i b_i) with small negatives clamped; genuinely negative diagonals
// are a domain error for standalone evaluation.
inline std::array<double, 4> diag_geometric_means(const XMatrix& x, const Tolerance& tol) {
  const double scale = 1.0 + max_magnitude(x);
  std::array<double, 4> g{};
  for (std::size_t i = 0; i < 4; ++i) {
    double ai = x.a[i], bi = x.b[i];
    if (ai < -tol.eps * scale || bi < -tol.eps * scale)
      throw std::domain_error("negative diagonal entry in inequality evaluation");
    g[i] = std::sqrt(std::max(0.0, ai) * std::max(0.0, bi));
  }
  return g;
}

inline bool diagonals_nonnegative(const XMatrix& x, const Tolerance& tol) {
  const double scale = 1.0 + max_magnitude(x);
  for (std::size_t i = 0; i < 4; ++i) {
    if (x.a[i] < -tol.eps * scale || x.b[i] < -tol.eps * scale) return false;
  }
  return true;
}

inline IneqReport finish_report(IneqKind k, double lhs, double rhs, const Tolerance& tol) {
  IneqReport r;
  r.kind = k;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.satisfied = ge_tol(lhs, rhs, scale_of(lhs, rhs), tol);
  r.raw_slacks = {r.slack, r.slack};
  return r;
}

inline void complementary_pair(int i, int j, int& k, int& l) {
  k = l = 0;
  for (int m = 1; m <= 4; ++m) {
    if (m == i || m == j) continue;
    (k == 0 ? k : l) = m;
  }
}

}  // namespace detail

// S1[i,j]: min{sqrt(a_i b_i), sqrt(a_j b_j)} >= max{|z_i|, |z_j|}
// S2[i,j]: min{sqrt(a_i b_i)+sqrt(a_j b_j), sqrt(a_k b_k)+sqrt(a_l b_l)}
//            >= max{|z_i|+|z_j|, |z_k|+|z_l|}   ({i,j,k,l} = {1,2,3,4})
// S3[i]:   sum_{j != i} sqrt(a_j b_j) >= |z_i|
inline IneqReport eval_state_inequality(const XMatrix& x, const IneqKind& k,
                                        const Tolerance& tol = {}) {
  using F = IneqKind::Family;
  const auto g = detail::diag_geometric_means(x, tol);
  auto gi = [&](int i) { return g[static_cast<std::size_t>(i - 1)]; };
  auto zi = [&](int i) { return std::abs(x.z[static_cast<std::size_t>(i - 1)]); };
  switch (k.family) {
    case F::S1:
      return detail::finish_report(k, std::min(gi(k.i), gi(k.j)), std::max(zi(k.i), zi(k.j)), tol);
    case F::S2: {
      int c1 = 0, c2 = 0;
      detail::complementary_pair(k.i, k.j, c1, c2);
      const double lhs = std::min(gi(k.i) + gi(k.j), gi(c1) + gi(c2));
      const double rhs = std::max(zi(k.i) + zi(k.j), zi(c1) + zi(c2));
      return detail::finish_report(k, lhs, rhs, tol);
    }
    case F::S3: {
      double lhs = 0.0;
      for (int m = 1; m <= 4; ++m)
        if (m != k.i) lhs += gi(m);
      return detail::finish_report(k, lhs, zi(k.i), tol);
    }
    default:
      throw std::invalid_argument("eval_state_inequality: witness inequality kind");
  }
}

// W1[i,j]: sqrt(s_i t_i) + sqrt(s_j t_j) >= |u_i| + |u_j|
// W2[i,j]: sum_{k != j} sqrt(s_k t_k) >= |u_i|  and
//          sum_{k != i} sqrt(s_k t_k) >= |u_j|
// W3:      sum sqrt(s_i t_i) >= sum |u_i|
inline IneqReport eval_witness_inequality(const XMatrix& w, const IneqKind& k,
                                          const Tolerance& tol = {}) {
  using F = IneqKind::Family;
  const auto g = detail::diag_geometric_means(w, tol);
  auto gi = [&](int i) { return g[static_cast<std::size_t>(i - 1)]; };
  auto ui = [&](int i) { return std::abs(w.z[static_cast<std::size_t>(i - 1)]); };
  auto sum_except = [&](int skip) {
    double s = 0.0;
    for (int m = 1; m <= 4; ++m)
      if (m != skip) s += gi(m);
    return s;
  };
  switch (k.family) {
    case F::W1:
      return detail::finish_report(k, gi(k.i) + gi(k.j), ui(k.i) + ui(k.j), tol);
    case F::W2: {
      const double lhs0 = sum_except(k.j), rhs0 = ui(k.i);
      const double lhs1 = sum_except(k.i), rhs1 = ui(k.j);
      IneqReport r;
      r.kind = k;
      r.raw_slacks = {lhs0 - rhs0, lhs1 - rhs1};
      const bool first_worse = r.raw_slacks[0] <= r.raw_slacks[1];
      r.lhs = first_worse ? lhs0 : lhs1;
      r.rhs = first_worse ? rhs0 : rhs1;
      r.slack = std::min(r.raw_slacks[0], r.raw_slacks[1]);
      r.satisfied = ge_tol(lhs0, rhs0, scale_of(lhs0, rhs0), tol) &&
                    ge_tol(lhs1, rhs1, scale_of(lhs1, rhs1), tol);
      return r;
    }
    case F::W3: {
      double lhs = 0.0, rhs = 0.0;
      for (int m = 1; m <= 4; ++m) {
        lhs += gi(m);
        rhs += ui(m);
      }
      return detail::finish_report(k, lhs, rhs, tol);
    }
    default:
      throw std::invalid_argument("eval_witness_inequality: state inequality kind");
  }
}

// Inequality sets characterizing each cone on X-shaped inputs. Index pairs
// follow the bipartitions: A pairs {1,4}/{2,3}, B pairs {1,3}/{2,4},
// C pairs {1,2}/{3,4}. Pair hulls are governed by the S2 condition of the
// complementary partition; dual pair hulls by the matching W2 pair plus W3.
inline std::vector<IneqKind> governing_state_inequalities(ConeId c) {
  using K = IneqKind;
  switch (c) {
    case ConeId::A: return {K::s1(1, 4), K::s1(2, 3)};
    case ConeId::B: return {K::s1(1, 3), K::s1(2, 4)};
    case ConeId::C: return {K::s1(1, 2), K::s1(3, 4)};
    case ConeId::MeetAB: return {K::s1(1, 4), K::s1(2, 3), K::s1(1, 3), K::s1(2, 4)};
    case ConeId::MeetBC: return {K::s1(1, 3), K::s1(2, 4), K::s1(1, 2), K::s1(3, 4)};
    case ConeId::MeetCA: return {K::s1(1, 2), K::s1(3, 4), K::s1(1, 4), K::s1(2, 3)};
    case ConeId::MeetABC:
      return {K::s1(1, 2), K::s1(1, 3), K::s1(1, 4), K::s1(2, 3), K::s1(2, 4), K::s1(3, 4)};
    case ConeId::JoinAB: return {K::s2(1, 2)};
    case ConeId::JoinBC: return {K::s2(1, 4)};
    case ConeId::JoinCA: return {K::s2(1, 3)};
    case ConeId::JoinABC: return {K::s3(1), K::s3(2), K::s3(3), K::s3(4)};
    default:
      throw std::invalid_argument("governing_state_inequalities: dual cone id");
  }
}

inline std::vector<IneqKind> governing_witness_inequalities(ConeId c) {
  using K = IneqKind;
  switch (c) {
    case ConeId::DualA: return {K::w1(1, 4), K::w1(2, 3)};
    case ConeId::DualB: return {K::w1(1, 3), K::w1(2, 4)};
    case ConeId::DualC: return {K::w1(1, 2), K::w1(3, 4)};
    case ConeId::DualMeetAB: return {K::w2(1, 2), K::w2(3, 4), K::w3()};
    case ConeId::DualMeetBC: return {K::w2(1, 4), K::w2(2, 3), K::w3()};
    case ConeId::DualMeetCA: return {K::w2(1, 3), K::w2(2, 4), K::w3()};
    case ConeId::DualMeetABC: return {K::w3()};
    case ConeId::DualJoinAB: return {K::w1(1, 4), K::w1(2, 3), K::w1(1, 3), K::w1(2, 4)};
    case ConeId::DualJoinBC: return {K::w1(1, 3), K::w1(2, 4), K::w1(1, 2), K::w1(3, 4)};
    case ConeId::DualJoinCA: return {K::w1(1, 2), K::w1(3, 4), K::w1(1, 4), K::w1(2, 3)};
    case ConeId::DualJoinABC:
      return {K::w1(1, 2), K::w1(1, 3), K::w1(1, 4), K::w1(2, 3), K::w1(2, 4), K::w1(3, 4)};
    default:
      throw std::invalid_argument("governing_witness_inequalities: primal cone id");
  }
}

// Exact membership of an X-shaped state in a primal cone: positivity plus the
// governing inequality set. Non-positive input is a negative verdict, not an
// error; diagonals negative beyond tolerance skip inequality evaluation.
inline MembershipVerdict state_in_cone(const XMatrix& x, ConeId c, const Tolerance& tol = {}) {
  if (!is_primal(c)) throw std::invalid_argument("state_in_cone: expected a primal cone");
  MembershipVerdict v;
  v.psd_checked = true;
  v.psd_ok = is_psd_x(x, tol);
  if (!detail::diagonals_nonnegative(x, tol)) {
    v.member = false;
    return v;
  }
  bool all_ok = true;
  for (const auto& k : governing_state_inequalities(c)) {
    v.reports.push_back(eval_state_inequality(x, k, tol));
    all_ok = all_ok && v.reports.back().satisfied;
  }
  v.member = v.psd_ok && all_ok;
  return v;
}

// Membership of an X-shaped witness in a dual cone: nonnegative diagonals
// plus the governing W-inequality set.
inline MembershipVerdict witness_in_cone(const XMatrix& w, ConeId c, const Tolerance& tol = {}) {
  if (!is_dual(c)) throw std::invalid_argument("witness_in_cone: expected a dual cone");
  MembershipVerdict v;
  v.psd_checked = true;
  v.psd_ok = detail::diagonals_nonnegative(w, tol);
  if (!v.psd_ok) {
    v.member = false;
    return v;
  }
  bool all_ok = true;
  for (const auto& k : governing_witness_inequalities(c)) {
    v.reports.push_back(eval_witness_inequality(w, k, tol));
    all_ok = all_ok && v.reports.back().satisfied;
  }
  v.member = all_ok;
  return v;
}

struct GeneralVerdict {
  MembershipVerdict verdict;
  bool conclusive = false;   // failure always is; success only for X-shaped input
  bool x_shaped = false;
  double off_x_residual = 0.0;
};

// Necessary criterion for a general self-adjoint matrix: run the X-part
// through the cone test. The X-part of a member is a member, so failure rules
// the input out of the cone; success is conclusive only if the input was
// already X-shaped.
inline GeneralVerdict necessary_check_general(const Hermitian8& h, ConeId c,
                                              const Tolerance& tol = {}) {
  GeneralVerdict g;
  g.off_x_residual = off_x_residual(h);
  g.x_shaped = g.off_x_residual <= tol.eps * (1.0 + frobenius_norm(h));
  const XMatrix x = x_part(h);
  g.verdict = is_primal(c) ? state_in_cone(x, c, tol) : witness_in_cone(x, c, tol);
  g.conclusive = g.x_shaped || !g.verdict.member;
  return g;
}

}  // namespace xcone
