#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "xcone/cones.hpp"
#include "xcone/criteria.hpp"
#include "xcone/extremals.hpp"
#include "xcone/rng.hpp"
#include "xcone/tolerance.hpp"
#include "xcone/xmatrix.hpp"

namespace xcone {

// Requested certificate does not exist because the input is a member.
struct NoCertificate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Certificate {
  enum class Kind { witness, counterstate };
  Kind kind;
  XMatrix object;
  double pairing_value = 0.0;
};

struct DecompositionTerm {
  double weight = 0.0;
  GeneratorFamily family;
  GeneratorParams params;
};

struct Decomposition {
  ConeId cone;
  std::vector<DecompositionTerm> terms;
  double residual = 0.0;
};

namespace detail {

// Pair (p, q) with p*q = 1 whose pairing contribution p*alpha + q*beta equals
// 2*sqrt(alpha*beta) when both are positive. When one diagonal vanishes the
// ideal ratio degenerates, so the contribution is merely pushed below the
// given budget; when both vanish any ratio works and (1,1) is exact.
inline std::pair<double, double> unit_product_pair(double alpha, double beta, double budget) {
  alpha = std::max(0.0, alpha);
  beta = std::max(0.0, beta);
  if (alpha > 0.0 && beta > 0.0) {
    const double p = std::sqrt(beta / alpha);
    return {p, 1.0 / p};
  }
  if (alpha == 0.0 && beta == 0.0) return {1.0, 1.0};
  if (alpha == 0.0) {
    const double p = std::max(1.0, beta / budget);
    return {p, 1.0 / p};
  }
  const double q = std::max(1.0, alpha / budget);
  return {1.0 / q, q};
}

// -conj(z)/|z|, the phase that makes 2 Re(u z) equal -2|z|; arg(0) is 0.
inline Complex opposing_phase(Complex z) {
  const double m = std::abs(z);
  if (m == 0.0) return Complex(-1.0, 0.0);
  return -std::conj(z) / m;
}

inline std::array<double, 4> clamped_means(const XMatrix& x) {
  std::array<double, 4> g{};
  for (std::size_t i = 0; i < 4; ++i)
    g[i] = std::sqrt(std::max(0.0, x.a[i]) * std::max(0.0, x.b[i]));
  return g;
}

// Witness for an input that is not positive semidefinite: a PSD block
// certificate built from the most negative 2x2 block eigenvector. PSD
// witnesses lie in every dual cone.
inline XMatrix negative_block_witness(const XMatrix& x, const Tolerance& tol) {
  const double scale = 1.0 + max_magnitude(x);
  XMatrix w;
  for (std::size_t i = 0; i < 4; ++i) {
    if (x.a[i] < -tol.eps * scale) {
      w.a[i] = 1.0;
      return w;
    }
    if (x.b[i] < -tol.eps * scale) {
      w.b[i] = 1.0;
      return w;
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (x.a[i] * x.b[i] >= std::norm(x.z[i]) - tol.eps * scale) continue;
    const double a = x.a[i], b = x.b[i];
    const double lam = 0.5 * ((a + b) - std::hypot(a - b, 2.0 * std::abs(x.z[i])));
    // eigenvector of [[a, z], [conj z, b]] for the smaller eigenvalue
    Complex v1, v2;
    if (std::abs(a - lam) >= std::abs(b - lam)) {
      v1 = -x.z[i];
      v2 = Complex(a - lam, 0.0);
    } else {
      v1 = Complex(b - lam, 0.0);
      v2 = -std::conj(x.z[i]);
    }
    const double n2 = std::norm(v1) + std::norm(v2);
    w.a[i] = std::norm(v1) / n2;
    w.b[i] = std::norm(v2) / n2;
    w.z[i] = std::conj(v1) * v2 / n2;
    return w;
  }
  throw std::logic_error("negative_block_witness: input is positive semidefinite");
}

}  // namespace detail

// Separating witness for a state outside a primal cone: W in dual(c) with
// pair_x(W, x) < 0, built from the first violated governing inequality.
//   S1[i,j] violated: unit-product block on the small-diagonal index plus an
//     opposing phase on the large-|z| index.
//   S3[i] violated: unit-product blocks on the three other indices plus an
//     opposing phase at i.
//   S2 violated: unit-product blocks on the deficient diagonal pair plus
//     opposing phases on the excess anti-diagonal pair.
inline Certificate find_state_witness(const XMatrix& x, ConeId c, const Tolerance& tol = {}) {
  if (!is_primal(c)) throw std::invalid_argument("find_state_witness: expected a primal cone");
  const MembershipVerdict verdict = state_in_cone(x, c, tol);
  if (verdict.member) throw NoCertificate("state is a member of " + cone_name(c));

  if (!verdict.psd_ok) {
    XMatrix w = detail::negative_block_witness(x, tol);
    return {Certificate::Kind::witness, w, pair_x(w, x)};
  }

  const auto g = detail::clamped_means(x);
  auto gi = [&](int i) { return g[static_cast<std::size_t>(i - 1)]; };
  auto zi = [&](int i) { return std::abs(x.z[static_cast<std::size_t>(i - 1)]); };
  const IneqReport* violated = nullptr;
  for (const auto& r : verdict.reports) {
    if (!r.satisfied) {
      violated = &r;
      break;
    }
  }
  if (!violated) throw std::logic_error("find_state_witness: no violated inequality recorded");

  XMatrix w;
  auto put_block = [&](int idx, double budget) {
    const auto k = static_cast<std::size_t>(idx - 1);
    const auto [p, q] = detail::unit_product_pair(x.a[k], x.b[k], budget);
    w.a[k] = p;
    w.b[k] = q;
  };
  auto put_phase = [&](int idx) {
    const auto k = static_cast<std::size_t>(idx - 1);
    w.z[k] = detail::opposing_phase(x.z[k]);
  };

  using F = IneqKind::Family;
  switch (violated->kind.family) {
    case F::S1: {
      const int i = violated->kind.i, j = violated->kind.j;
      const int diag = gi(i) <= gi(j) ? i : j;
      const int anti = zi(i) >= zi(j) ? i : j;
      put_block(diag, -violated->slack / 8.0);
      put_phase(anti);
      break;
    }
    case F::S3: {
      const double budget = -violated->slack / 8.0;
      for (int m = 1; m <= 4; ++m)
        if (m != violated->kind.i) put_block(m, budget);
      put_phase(violated->kind.i);
      break;
    }
    case F::S2: {
      const std::array<int, 2> p1 = {violated->kind.i, violated->kind.j};
      int k = 0, l = 0;
      detail::complementary_pair(p1[0], p1[1], k, l);
      const std::array<int, 2> p2 = {k, l};
      const double cross12 = gi(p1[0]) + gi(p1[1]) - zi(p2[0]) - zi(p2[1]);
      const double cross21 = gi(p2[0]) + gi(p2[1]) - zi(p1[0]) - zi(p1[1]);
      const auto& diag_pair = cross12 <= cross21 ? p1 : p2;
      const auto& anti_pair = cross12 <= cross21 ? p2 : p1;
      const double cross = std::min(cross12, cross21);
      if (cross >= 0.0) throw std::logic_error("find_state_witness: no violated cross pairing");
      const double budget = -cross / 8.0;
      put_block(diag_pair[0], budget);
      put_block(diag_pair[1], budget);
      put_phase(anti_pair[0]);
      put_phase(anti_pair[1]);
      break;
    }
    default:
      throw std::logic_error("find_state_witness: unexpected inequality family");
  }
  return {Certificate::Kind::witness, w, pair_x(w, x)};
}

// Counter-state for a candidate outside a dual cone: rho in the pre-dual
// primal cone with pair_x(w, rho) < 0. Ratios sqrt(t_k/s_k) with phases
// opposing arg(u_k), mirroring the witness constructions.
inline Certificate find_witness_counterstate(const XMatrix& w, ConeId c, const Tolerance& tol = {}) {
  if (!is_dual(c)) throw std::invalid_argument("find_witness_counterstate: expected a dual cone");
  const MembershipVerdict verdict = witness_in_cone(w, c, tol);
  if (verdict.member) throw NoCertificate("witness is a member of " + cone_name(c));

  XMatrix rho;
  if (!verdict.psd_ok) {
    // some diagonal is negative; the matching diagonal unit exposes it
    const double scale = 1.0 + max_magnitude(w);
    for (std::size_t i = 0; i < 4; ++i) {
      if (w.a[i] < -tol.eps * scale) {
        rho.a[i] = 1.0;
        return {Certificate::Kind::counterstate, rho, pair_x(w, rho)};
      }
      if (w.b[i] < -tol.eps * scale) {
        rho.b[i] = 1.0;
        return {Certificate::Kind::counterstate, rho, pair_x(w, rho)};
      }
    }
    throw std::logic_error("find_witness_counterstate: diagonal flag without negative diagonal");
  }

  const IneqReport* violated = nullptr;
  for (const auto& r : verdict.reports) {
    if (!r.satisfied) {
      violated = &r;
      break;
    }
  }
  if (!violated) throw std::logic_error("find_witness_counterstate: no violated inequality recorded");

  auto put_block = [&](int idx, double budget) {
    const auto k = static_cast<std::size_t>(idx - 1);
    const auto [p, q] = detail::unit_product_pair(w.a[k], w.b[k], budget);
    rho.a[k] = p;
    rho.b[k] = q;
  };
  auto put_phase = [&](int idx) {
    const auto k = static_cast<std::size_t>(idx - 1);
    rho.z[k] = detail::opposing_phase(w.z[k]);
  };

  using F = IneqKind::Family;
  switch (violated->kind.family) {
    case F::W1: {
      const double budget = -violated->slack / 8.0;
      put_block(violated->kind.i, budget);
      put_block(violated->kind.j, budget);
      put_phase(violated->kind.i);
      put_phase(violated->kind.j);
      break;
    }
    case F::W2: {
      // the failed displayed inequality fixes which index keeps the phase
      const bool first_failed = violated->raw_slacks[0] < violated->raw_slacks[1];
      const int anti = first_failed ? violated->kind.i : violated->kind.j;
      const int skip = first_failed ? violated->kind.j : violated->kind.i;
      const double slack = std::min(violated->raw_slacks[0], violated->raw_slacks[1]);
      const double budget = -slack / 8.0;
      for (int m = 1; m <= 4; ++m)
        if (m != skip) put_block(m, budget);
      put_phase(anti);
      break;
    }
    case F::W3: {
      const double budget = -violated->slack / 8.0;
      for (int m = 1; m <= 4; ++m) {
        put_block(m, budget);
        put_phase(m);
      }
      break;
    }
    default:
      throw std::logic_error("find_witness_counterstate: unexpected inequality family");
  }
  return {Certificate::Kind::counterstate, rho, pair_x(w, rho)};
}

// Exact extreme-ray decomposition for the cones with block structure:
// A, B, C and A^B^C. Per block, anti-diagonal entries of modulus below the
// block maximum m branch into +/-m phase flips; each branch is an extreme
// pattern with ratios sqrt(a_k/b_k), and diagonal surplus goes to Delta.
inline Decomposition decompose_constructive(const XMatrix& x, ConeId c, const Tolerance& tol = {}) {
  std::vector<std::vector<int>> blocks;
  switch (c) {
    case ConeId::A: blocks = {{1, 4}, {2, 3}}; break;
    case ConeId::B: blocks = {{1, 3}, {2, 4}}; break;
    case ConeId::C: blocks = {{1, 2}, {3, 4}}; break;
    case ConeId::MeetABC: blocks = {{1, 2, 3, 4}}; break;
    default:
      throw std::invalid_argument("decompose_constructive: supported cones are A, B, C, A^B^C");
  }
  if (!state_in_cone(x, c, tol).member)
    throw std::domain_error("decompose_constructive: input is not a member of " + cone_name(c));

  const double scale = 1.0 + max_magnitude(x);
  Decomposition dec;
  dec.cone = c;

  for (const auto& block : blocks) {
    double m = 0.0;
    for (int idx : block) m = std::max(m, std::abs(x.z[static_cast<std::size_t>(idx - 1)]));

    if (m <= tol.eps * scale) {
      for (int idx : block) {
        const auto k = static_cast<std::size_t>(idx - 1);
        if (x.a[k] > 0.0) {
          dec.terms.push_back({x.a[k], GeneratorFamily::delta(idx, 'a'), {}});
        }
        if (x.b[k] > 0.0) {
          dec.terms.push_back({x.b[k], GeneratorFamily::delta(idx, 'b'), {}});
        }
      }
      continue;
    }

    GeneratorFamily base = block.size() == 2 ? GeneratorFamily::e1(block[0], block[1])
                                             : GeneratorFamily::e3();
    std::array<double, 4> ratio{}, theta{}, flip_minus{};
    for (int idx : block) {
      const auto k = static_cast<std::size_t>(idx - 1);
      ratio[k] = std::sqrt(x.a[k] / x.b[k]);  // membership forces a_k b_k >= m^2 > 0
      theta[k] = std::abs(x.z[k]) == 0.0 ? 0.0 : std::arg(x.z[k]);
      flip_minus[k] = (m - std::abs(x.z[k])) / (2.0 * m);
    }

    // enumerate sign branches; indices with |z_k| = m only take the + sign
    std::vector<std::pair<double, unsigned>> branches = {{1.0, 0u}};
    for (std::size_t pos = 0; pos < block.size(); ++pos) {
      const auto k = static_cast<std::size_t>(block[pos] - 1);
      const double wm = flip_minus[k];
      std::vector<std::pair<double, unsigned>> next;
      for (const auto& [bw, signs] : branches) {
        if (1.0 - wm > 0.0) next.emplace_back(bw * (1.0 - wm), signs);
        if (wm > 0.0) next.emplace_back(bw * wm, signs | (1u << pos));
      }
      branches = std::move(next);
    }
    for (const auto& [bw, signs] : branches) {
      GeneratorParams p;
      for (std::size_t pos = 0; pos < block.size(); ++pos) {
        const auto k = static_cast<std::size_t>(block[pos] - 1);
        p.ratio[k] = ratio[k];
        p.phase[k] = theta[k] + (((signs >> pos) & 1u) ? std::numbers::pi : 0.0);
      }
      dec.terms.push_back({bw * m, base, p});
    }

    for (int idx : block) {
      const auto k = static_cast<std::size_t>(idx - 1);
      const double da = x.a[k] - m * ratio[k];
      const double db = x.b[k] - m / ratio[k];
      if (da > 0.0) dec.terms.push_back({da, GeneratorFamily::delta(idx, 'a'), {}});
      if (db > 0.0) dec.terms.push_back({db, GeneratorFamily::delta(idx, 'b'), {}});
    }
  }

  XMatrix rebuilt;
  for (const auto& t : dec.terms) rebuilt = rebuilt + t.weight * generator(t.family, t.params);
  dec.residual = frobenius_norm(x - rebuilt);
  return dec;
}

// --- dictionary fit ----------------------------------------------------------

struct DictionaryConfig {
  int ratio_points = 9;                  // log-spaced grid points per free ratio
  double ratio_min = 0.125;
  double ratio_max = 8.0;
  bool include_target_ratios = true;     // add sqrt(a_i/b_i) of the input per slot
  std::size_t max_family_atoms = 8192;   // grid is thinned beyond this
  double nnls_tol = 1e-12;               // dual-feasibility threshold of the active-set solve
  int nnls_max_iter = 10000;
};

namespace detail {

// 16 real coordinates, scaled so the Euclidean norm equals the Frobenius norm
// of the embedded matrix.
inline std::array<double, 16> vectorize(const XMatrix& x) {
  std::array<double, 16> v{};
  const double s2 = std::numbers::sqrt2;
  for (std::size_t i = 0; i < 4; ++i) {
    v[i] = x.a[i];
    v[i + 4] = x.b[i];
    v[i + 8] = s2 * x.z[i].real();
    v[i + 12] = s2 * x.z[i].imag();
  }
  return v;
}

struct NnlsResult {
  std::vector<double> weights;
  double residual_norm = 0.0;
  int iterations = 0;
};

// Nonnegative least squares by the Lawson-Hanson active-set method: grow a
// passive set by the most correlated atom, solve the unconstrained least
// squares on it, and step back whenever a passive weight would turn negative.
// Terminates with an exact fit whenever one exists in the dictionary.
inline NnlsResult nnls(const std::vector<std::array<double, 16>>& atoms,
                       const std::array<double, 16>& target, double tolerance, int max_iter) {
  const std::size_t n = atoms.size();
  NnlsResult res;
  res.weights.assign(n, 0.0);

  Eigen::VectorXd v(16);
  double target_norm = 0.0;
  for (std::size_t k = 0; k < 16; ++k) {
    v(static_cast<Eigen::Index>(k)) = target[k];
    target_norm += target[k] * target[k];
  }
  target_norm = std::sqrt(target_norm);
  const double grad_tol = tolerance * (1.0 + target_norm);

  std::vector<double> norm(n);
  for (std::size_t j = 0; j < n; ++j) {
    double n2 = 0.0;
    for (std::size_t k = 0; k < 16; ++k) n2 += atoms[j][k] * atoms[j][k];
    norm[j] = std::sqrt(n2);
  }

  std::vector<std::size_t> passive;
  std::vector<char> in_passive(n, 0);
  Eigen::VectorXd r = v;
  auto solve_passive = [&](Eigen::VectorXd& s) {
    Eigen::MatrixXd d(16, static_cast<Eigen::Index>(passive.size()));
    for (std::size_t c = 0; c < passive.size(); ++c)
      for (std::size_t k = 0; k < 16; ++k)
        d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = atoms[passive[c]][k];
    s = d.colPivHouseholderQr().solve(v);
    return d;
  };

  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    // most correlated excluded atom, normalized so the choice is scale-free
    std::size_t best = n;
    double best_grad = grad_tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (norm[j] <= 0.0 || in_passive[j]) continue;
      double g = 0.0;
      for (std::size_t k = 0; k < 16; ++k) g += atoms[j][k] * r(static_cast<Eigen::Index>(k));
      g /= norm[j];
      if (g > best_grad) {
        best_grad = g;
        best = j;
      }
    }
    if (best == n) break;
    passive.push_back(best);
    in_passive[best] = 1;

    // inner loop: keep the passive weights feasible
    for (int guard = 0; guard < 2 * static_cast<int>(n) + 16; ++guard) {
      Eigen::VectorXd s;
      Eigen::MatrixXd d = solve_passive(s);
      bool feasible = true;
      double alpha = 1.0;
      for (std::size_t c = 0; c < passive.size(); ++c) {
        const double sc = s(static_cast<Eigen::Index>(c));
        if (sc <= 0.0) {
          feasible = false;
          const double wc = res.weights[passive[c]];
          if (wc - sc > 0.0) alpha = std::min(alpha, wc / (wc - sc));
        }
      }
      if (feasible) {
        for (std::size_t c = 0; c < passive.size(); ++c)
          res.weights[passive[c]] = s(static_cast<Eigen::Index>(c));
        r = v - d * s;
        break;
      }
      for (std::size_t c = 0; c < passive.size(); ++c) {
        const double wc = res.weights[passive[c]];
        res.weights[passive[c]] = wc + alpha * (s(static_cast<Eigen::Index>(c)) - wc);
      }
      std::vector<std::size_t> kept;
      for (const std::size_t j : passive) {
        if (res.weights[j] > 1e-14 * (1.0 + target_norm)) {
          kept.push_back(j);
        } else {
          res.weights[j] = 0.0;
          in_passive[j] = 0;
        }
      }
      passive = std::move(kept);
      if (passive.empty()) {
        r = v;
        break;
      }
    }
  }
  res.residual_norm = r.norm();
  return res;
}

inline std::vector<double> ratio_grid(int points, double lo, double hi) {
  std::vector<double> g;
  if (points <= 1) {
    g.push_back(std::sqrt(lo * hi));
    return g;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int k = 0; k < points; ++k)
    g.push_back(std::exp(llo + (lhi - llo) * k / (points - 1)));
  return g;
}

}  // namespace detail

// Finite-dictionary decomposition over the cone's extreme-ray families:
// phases are locked to arg z_i and its sign flip, ratios run over a log grid
// plus the input's own ratio per slot. A residual within tolerance certifies
// membership constructively; a large residual is inconclusive.
inline Decomposition decompose_dictionary(const XMatrix& x, ConeId c,
                                          const DictionaryConfig& config = {},
                                          const Tolerance& tol = {}) {
  const auto fams = extreme_ray_families(c);
  std::vector<DecompositionTerm> atoms;
  std::vector<std::array<double, 16>> columns;

  std::array<double, 4> theta{};
  std::array<double, 4> target_ratio{};
  for (std::size_t k = 0; k < 4; ++k) {
    theta[k] = std::abs(x.z[k]) == 0.0 ? 0.0 : std::arg(x.z[k]);
    target_ratio[k] = (x.a[k] > 0.0 && x.b[k] > 0.0) ? std::sqrt(x.a[k] / x.b[k]) : 0.0;
  }

  for (const auto& f : fams) {
    const SlotMask mask = slots_of(f);
    int ratio_slots = 0, phase_slots = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      ratio_slots += mask.ratio[k] ? 1 : 0;
      phase_slots += mask.phase[k] ? 1 : 0;
    }
    int points = std::max(1, config.ratio_points);
    auto family_size = [&](int pts) {
      double size = std::pow(static_cast<double>(pts) + (config.include_target_ratios ? 1 : 0),
                             ratio_slots) *
                    std::pow(2.0, phase_slots);
      return size;
    };
    while (points > 1 && family_size(points) > static_cast<double>(config.max_family_atoms))
      points = (points + 1) / 2;

    std::array<std::vector<double>, 4> ratio_options;
    std::array<std::vector<double>, 4> phase_options;
    for (std::size_t k = 0; k < 4; ++k) {
      if (mask.ratio[k]) {
        ratio_options[k] = detail::ratio_grid(points, config.ratio_min, config.ratio_max);
        if (config.include_target_ratios && target_ratio[k] > 0.0)
          ratio_options[k].push_back(target_ratio[k]);
      } else {
        ratio_options[k] = {0.0};  // placeholder, slot unused
      }
      phase_options[k] = mask.phase[k] ? std::vector<double>{theta[k], theta[k] + std::numbers::pi}
                                       : std::vector<double>{0.0};
    }

    std::array<std::size_t, 8> idx{};
    while (true) {
      GeneratorParams p;
      for (std::size_t k = 0; k < 4; ++k) {
        if (mask.ratio[k]) p.ratio[k] = ratio_options[k][idx[k]];
        if (mask.phase[k]) p.phase[k] = phase_options[k][idx[k + 4]];
      }
      atoms.push_back({0.0, f, p});
      columns.push_back(detail::vectorize(generator(f, p)));
      // odometer over the 8 option lists
      std::size_t pos = 0;
      for (; pos < 8; ++pos) {
        const auto& opts = pos < 4 ? ratio_options[pos] : phase_options[pos - 4];
        if (++idx[pos] < opts.size()) break;
        idx[pos] = 0;
      }
      if (pos == 8) break;
    }
  }

  const auto fit =
      detail::nnls(columns, detail::vectorize(x), config.nnls_tol, config.nnls_max_iter);

  Decomposition dec;
  dec.cone = c;
  // weights far below the verification tolerance only add noise terms
  const double prune = 1e-5 * tol.eps * (1.0 + max_magnitude(x));
  XMatrix rebuilt;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (fit.weights[j] <= prune) continue;
    atoms[j].weight = fit.weights[j];
    dec.terms.push_back(atoms[j]);
    rebuilt = rebuilt + fit.weights[j] * generator(atoms[j].family, atoms[j].params);
  }
  dec.residual = frobenius_norm(x - rebuilt);
  return dec;
}

// Checks a decomposition end to end: nonnegative weights, every term matching
// its declared family and belonging to the target cone, and reconstruction
// within tolerance of x.
inline bool verify_decomposition(const Decomposition& d, const XMatrix& x,
                                 const Tolerance& tol = {}) {
  XMatrix rebuilt;
  for (const auto& t : d.terms) {
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) return false;
    XMatrix g;
    try {
      g = generator(t.family, t.params);
    } catch (const std::invalid_argument&) {
      return false;
    }
    if (!matches_family(g, t.family, tol)) return false;
    const bool in_cone = is_primal(d.cone) ? state_in_cone(g, d.cone, tol).member
                                           : witness_in_cone(g, d.cone, tol).member;
    if (!in_cone) return false;
    rebuilt = rebuilt + t.weight * g;
  }
  const double scale = 1.0 + frobenius_norm(x);
  return frobenius_norm(x - rebuilt) <= tol.eps * scale;
}

struct DualityStat {
  ConeId primal;
  ConeId dual_cone;
  double min_pairing = 0.0;
  std::uint64_t trials = 0;
};

// Samples members of each (primal, dual) pair and records the minimum pairing
// seen; the duality contract is min >= -eps at sampling scale.
inline std::vector<DualityStat> duality_fuzz(
    const std::vector<std::pair<ConeId, ConeId>>& pairs, std::uint64_t trials, std::uint64_t seed,
    const SampleSpread& spread = {}) {
  std::vector<DualityStat> stats;
  stats.reserve(pairs.size());
  SplitMix64 seeder(seed);
  for (const auto& [primal, dual_cone] : pairs) {
    if (!is_primal(primal) || dual(primal) != dual_cone)
      throw std::invalid_argument("duality_fuzz: pair is not (cone, dual(cone))");
    SplitMix64 rng(seeder.fork());
    DualityStat st{primal, dual_cone, std::numeric_limits<double>::infinity(), trials};
    for (std::uint64_t t = 0; t < trials; ++t) {
      const XMatrix state = combine(sample_cone_terms(primal, rng, spread));
      const XMatrix witness = combine(sample_cone_terms(dual_cone, rng, spread));
      st.min_pairing = std::min(st.min_pairing, pair_x(witness, state));
    }
    stats.push_back(st);
  }
  return stats;
}

}  // namespace xcone
