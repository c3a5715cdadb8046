#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xcone/cones.hpp"
#include "xcone/criteria.hpp"
#include "xcone/rng.hpp"
#include "xcone/tolerance.hpp"
#include "xcone/xmatrix.hpp"

namespace xcone {

// Extreme-ray families of the X-restricted cones. Indices are 1-based.
//
//   Delta(i, side)  diagonal unit: a_i = 1 (side 'a') or b_i = 1 (side 'b')
//   WDelta(i)       rank-one block: a_i = r, b_i = 1/r, z_i = e^{i theta}
//   E1(i, j)        sqrt(a_i b_i) = |z_i| = sqrt(a_j b_j) = |z_j| = 1, rest 0
//   E2(i, j)        |z_i| = 1 and sqrt(a_k b_k) = 1 for all k != j, rest 0
//   E3              sqrt(a_i b_i) = |z_i| = 1 for all i
//   We1(i, j)       sqrt(s_i t_i) = |u_j| = 1, rest 0
//   We2(i, j)       sqrt(s_i t_i) = sqrt(s_j t_j) = |u_k| = |u_l| = 1, rest 0
//   We3(i)          |u_i| = 1 and sqrt(s_k t_k) = 1 for all k != i, rest 0
//
// E1/We2 pairs are unordered, E2/We1 pairs are ordered. Which cone a family
// generates follows from its index pattern: pairs {1,4}/{2,3} belong to the
// A bipartition, {1,3}/{2,4} to B, {1,2}/{3,4} to C.
struct GeneratorFamily {
  enum class Kind { Delta, WDelta, E1, E2, E3, We1, We2, We3 };

  Kind kind;
  int i = 0;
  int j = 0;
  char side = 'a';  // Delta only

  friend bool operator==(const GeneratorFamily&, const GeneratorFamily&) = default;

  static GeneratorFamily delta(int i, char side) {
    check_index(i);
    if (side != 'a' && side != 'b') throw std::invalid_argument("Delta side must be 'a' or 'b'");
    return {Kind::Delta, i, 0, side};
  }
  static GeneratorFamily wdelta(int i) {
    check_index(i);
    return {Kind::WDelta, i, 0, 'a'};
  }
  static GeneratorFamily e1(int i, int j) {
    check_pair(i, j);
    return {Kind::E1, std::min(i, j), std::max(i, j), 'a'};
  }
  static GeneratorFamily e2(int i, int j) {
    check_pair(i, j);
    return {Kind::E2, i, j, 'a'};
  }
  static GeneratorFamily e3() { return {Kind::E3, 0, 0, 'a'}; }
  static GeneratorFamily we1(int i, int j) {
    check_pair(i, j);
    return {Kind::We1, i, j, 'a'};
  }
  static GeneratorFamily we2(int i, int j) {
    check_pair(i, j);
    return {Kind::We2, std::min(i, j), std::max(i, j), 'a'};
  }
  static GeneratorFamily we3(int i) {
    check_index(i);
    return {Kind::We3, i, 0, 'a'};
  }

 private:
  static void check_index(int i) {
    if (i < 1 || i > 4) throw std::invalid_argument("generator family index out of range");
  }
  static void check_pair(int i, int j) {
    check_index(i);
    check_index(j);
    if (i == j) throw std::invalid_argument("generator family indices must differ");
  }
};

inline std::string family_name(const GeneratorFamily& f) {
  using K = GeneratorFamily::Kind;
  switch (f.kind) {
    case K::Delta:
      return std::string("Delta[") + std::to_string(f.i) + "," + f.side + "]";
    case K::WDelta: return "WDelta[" + std::to_string(f.i) + "]";
    case K::E1: return "Se1[" + std::to_string(f.i) + "," + std::to_string(f.j) + "]";
    case K::E2: return "Se2[" + std::to_string(f.i) + "," + std::to_string(f.j) + "]";
    case K::E3: return "Se3";
    case K::We1: return "We1[" + std::to_string(f.i) + "," + std::to_string(f.j) + "]";
    case K::We2: return "We2[" + std::to_string(f.i) + "," + std::to_string(f.j) + "]";
    case K::We3: return "We3[" + std::to_string(f.i) + "]";
  }
  return "?";
}

inline std::optional<GeneratorFamily> parse_family(const std::string& s) {
  for (int i = 1; i <= 4; ++i) {
    for (char side : {'a', 'b'})
      if (s == family_name(GeneratorFamily::delta(i, side))) return GeneratorFamily::delta(i, side);
    if (s == family_name(GeneratorFamily::wdelta(i))) return GeneratorFamily::wdelta(i);
    if (s == family_name(GeneratorFamily::we3(i))) return GeneratorFamily::we3(i);
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      if (s == family_name(GeneratorFamily::e1(i, j))) return GeneratorFamily::e1(i, j);
      if (s == family_name(GeneratorFamily::e2(i, j))) return GeneratorFamily::e2(i, j);
      if (s == family_name(GeneratorFamily::we1(i, j))) return GeneratorFamily::we1(i, j);
      if (s == family_name(GeneratorFamily::we2(i, j))) return GeneratorFamily::we2(i, j);
    }
  }
  if (s == "Se3") return GeneratorFamily::e3();
  return std::nullopt;
}

// Which of the four indices carry a free ratio (a_i = r, b_i = 1/r) and which
// carry a free phase (|z_i| = 1). All other entries of the pattern are zero.
struct SlotMask {
  std::array<bool, 4> ratio{};
  std::array<bool, 4> phase{};
};

inline SlotMask slots_of(const GeneratorFamily& f) {
  using K = GeneratorFamily::Kind;
  SlotMask m;
  auto on = [](std::array<bool, 4>& a, int idx) { a[static_cast<std::size_t>(idx - 1)] = true; };
  switch (f.kind) {
    case K::Delta: break;
    case K::WDelta:
      on(m.ratio, f.i);
      on(m.phase, f.i);
      break;
    case K::E1:
      on(m.ratio, f.i);
      on(m.ratio, f.j);
      on(m.phase, f.i);
      on(m.phase, f.j);
      break;
    case K::E2:
      for (int k = 1; k <= 4; ++k)
        if (k != f.j) on(m.ratio, k);
      on(m.phase, f.i);
      break;
    case K::E3:
      for (int k = 1; k <= 4; ++k) {
        on(m.ratio, k);
        on(m.phase, k);
      }
      break;
    case K::We1:
      on(m.ratio, f.i);
      on(m.phase, f.j);
      break;
    case K::We2:
      on(m.ratio, f.i);
      on(m.ratio, f.j);
      for (int k = 1; k <= 4; ++k)
        if (k != f.i && k != f.j) on(m.phase, k);
      break;
    case K::We3:
      for (int k = 1; k <= 4; ++k)
        if (k != f.i) on(m.ratio, k);
      on(m.phase, f.i);
      break;
  }
  return m;
}

// Free parameters of a family: r_i > 0 on ratio slots, theta_i on phase
// slots. Inactive slots must stay empty.
struct GeneratorParams {
  std::array<std::optional<double>, 4> ratio{};
  std::array<std::optional<double>, 4> phase{};
};

inline XMatrix generator(const GeneratorFamily& f, const GeneratorParams& p = {}) {
  const SlotMask m = slots_of(f);
  XMatrix x;
  for (std::size_t k = 0; k < 4; ++k) {
    if (m.ratio[k] != p.ratio[k].has_value() || m.phase[k] != p.phase[k].has_value())
      throw std::invalid_argument("generator: params do not match the family's free slots");
    if (m.ratio[k]) {
      const double r = *p.ratio[k];
      if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("generator: ratios must be positive and finite");
      x.a[k] = r;
      x.b[k] = 1.0 / r;
    }
    if (m.phase[k]) x.z[k] = std::polar(1.0, *p.phase[k]);
  }
  if (f.kind == GeneratorFamily::Kind::Delta) {
    (f.side == 'a' ? x.a : x.b)[static_cast<std::size_t>(f.i - 1)] = 1.0;
  }
  return x;
}

// Ray-normalized pattern test: true iff some positive multiple of m fits the
// family pattern within tolerance. The zero matrix matches nothing.
inline bool matches_family(const XMatrix& x, const GeneratorFamily& f, const Tolerance& tol = {}) {
  const double scale = 1.0 + max_magnitude(x);
  const SlotMask sm = slots_of(f);
  double unit = 0.0;
  if (f.kind == GeneratorFamily::Kind::Delta) {
    unit = (f.side == 'a' ? x.a : x.b)[static_cast<std::size_t>(f.i - 1)];
  } else {
    for (std::size_t k = 0; k < 4; ++k) {
      if (sm.ratio[k]) {
        if (x.a[k] < 0.0 || x.b[k] < 0.0) return false;
        unit = std::max(unit, std::sqrt(x.a[k] * x.b[k]));
      }
      if (sm.phase[k]) unit = std::max(unit, std::abs(x.z[k]));
    }
  }
  if (unit <= tol.eps * scale) return false;
  for (std::size_t k = 0; k < 4; ++k) {
    const bool diag_unit =
        f.kind == GeneratorFamily::Kind::Delta && k == static_cast<std::size_t>(f.i - 1);
    if (sm.ratio[k]) {
      if (!(x.a[k] > 0.0) || !(x.b[k] > 0.0)) return false;
      if (!near_zero(std::sqrt(x.a[k] * x.b[k]) - unit, scale, tol)) return false;
    } else if (diag_unit) {
      const double other = (f.side == 'a' ? x.b : x.a)[k];
      if (!near_zero(other, scale, tol)) return false;
    } else {
      if (!near_zero(x.a[k], scale, tol) || !near_zero(x.b[k], scale, tol)) return false;
    }
    if (sm.phase[k]) {
      if (!near_zero(std::abs(x.z[k]) - unit, scale, tol)) return false;
    } else {
      if (!near_zero(std::abs(x.z[k]), scale, tol)) return false;
    }
  }
  return true;
}

namespace detail {

inline std::array<std::pair<int, int>, 2> pairs_of_party(Party p) {
  switch (p) {
    case Party::A: return {{{1, 4}, {2, 3}}};
    case Party::B: return {{{1, 3}, {2, 4}}};
    default: return {{{1, 2}, {3, 4}}};
  }
}

// The single party whose bipartition pairs index the E2/We2 families of a
// two-cone meet/join: for {B,C} it is A, and cyclically.
inline Party complementary_party(Party p, Party q) {
  const int s = static_cast<int>(p) + static_cast<int>(q);
  return static_cast<Party>(3 - s);
}

}  // namespace detail

// Extreme-ray families of each X-restricted cone. Every member of the cone is
// a nonnegative combination of generators from exactly these families.
inline std::vector<GeneratorFamily> extreme_ray_families(ConeId c) {
  using GF = GeneratorFamily;
  std::vector<GF> fams;
  auto add_deltas = [&] {
    for (int i = 1; i <= 4; ++i) {
      fams.push_back(GF::delta(i, 'a'));
      fams.push_back(GF::delta(i, 'b'));
    }
  };
  auto add_wdeltas = [&] {
    for (int i = 1; i <= 4; ++i) fams.push_back(GF::wdelta(i));
  };
  auto add_e1 = [&](Party p) {
    for (const auto& [i, j] : detail::pairs_of_party(p)) fams.push_back(GF::e1(i, j));
  };
  auto add_e2 = [&](Party complementary) {
    for (const auto& [i, j] : detail::pairs_of_party(complementary)) {
      fams.push_back(GF::e2(i, j));
      fams.push_back(GF::e2(j, i));
    }
  };
  auto add_we1 = [&](Party p) {
    for (const auto& [i, j] : detail::pairs_of_party(p)) {
      fams.push_back(GF::we1(i, j));
      fams.push_back(GF::we1(j, i));
    }
  };
  auto add_we2 = [&](Party complementary) {
    for (const auto& [i, j] : detail::pairs_of_party(complementary)) fams.push_back(GF::we2(i, j));
  };

  switch (c) {
    case ConeId::A: add_e1(Party::A); add_deltas(); break;
    case ConeId::B: add_e1(Party::B); add_deltas(); break;
    case ConeId::C: add_e1(Party::C); add_deltas(); break;
    case ConeId::MeetAB:
      add_e2(detail::complementary_party(Party::A, Party::B));
      fams.push_back(GF::e3());
      add_deltas();
      break;
    case ConeId::MeetBC:
      add_e2(detail::complementary_party(Party::B, Party::C));
      fams.push_back(GF::e3());
      add_deltas();
      break;
    case ConeId::MeetCA:
      add_e2(detail::complementary_party(Party::C, Party::A));
      fams.push_back(GF::e3());
      add_deltas();
      break;
    case ConeId::MeetABC:
      fams.push_back(GF::e3());
      add_deltas();
      break;
    case ConeId::JoinAB: add_e1(Party::A); add_e1(Party::B); add_deltas(); break;
    case ConeId::JoinBC: add_e1(Party::B); add_e1(Party::C); add_deltas(); break;
    case ConeId::JoinCA: add_e1(Party::C); add_e1(Party::A); add_deltas(); break;
    case ConeId::JoinABC:
      add_e1(Party::A);
      add_e1(Party::B);
      add_e1(Party::C);
      add_deltas();
      break;
    case ConeId::DualA: add_we1(Party::A); add_wdeltas(); add_deltas(); break;
    case ConeId::DualB: add_we1(Party::B); add_wdeltas(); add_deltas(); break;
    case ConeId::DualC: add_we1(Party::C); add_wdeltas(); add_deltas(); break;
    case ConeId::DualMeetAB:  // A° + B°
      add_we1(Party::A);
      add_we1(Party::B);
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualMeetBC:
      add_we1(Party::B);
      add_we1(Party::C);
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualMeetCA:
      add_we1(Party::C);
      add_we1(Party::A);
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualMeetABC:
      add_we1(Party::A);
      add_we1(Party::B);
      add_we1(Party::C);
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualJoinAB:  // A° ∩ B°
      add_we2(detail::complementary_party(Party::A, Party::B));
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualJoinBC:
      add_we2(detail::complementary_party(Party::B, Party::C));
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualJoinCA:
      add_we2(detail::complementary_party(Party::C, Party::A));
      add_wdeltas();
      add_deltas();
      break;
    case ConeId::DualJoinABC:
      for (int i = 1; i <= 4; ++i) fams.push_back(GF::we3(i));
      add_wdeltas();
      add_deltas();
      break;
  }
  return fams;
}

// Sampling distribution knobs: ratios are log-uniform, phases uniform,
// combination weights an exponential simplex draw scaled by a log-uniform
// total mass. One-term samples reproduce pure extreme rays.
struct SampleSpread {
  double ratio_min = 0.1;
  double ratio_max = 10.0;
  double mass_min = 0.1;
  double mass_max = 10.0;
  int min_terms = 1;
  int max_terms = 8;
};

inline GeneratorParams random_params(const GeneratorFamily& f, SplitMix64& rng,
                                     const SampleSpread& spread = {}) {
  const SlotMask m = slots_of(f);
  GeneratorParams p;
  for (std::size_t k = 0; k < 4; ++k) {
    if (m.ratio[k]) p.ratio[k] = rng.log_uniform(spread.ratio_min, spread.ratio_max);
    if (m.phase[k]) p.phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return p;
}

struct SampledTerm {
  double weight;
  GeneratorFamily family;
  GeneratorParams params;
};

// One draw: a nonnegative combination of extreme-ray generators of the cone.
inline std::vector<SampledTerm> sample_cone_terms(ConeId c, SplitMix64& rng,
                                                  const SampleSpread& spread = {}) {
  const auto fams = extreme_ray_families(c);
  const int terms = rng.uniform_int(spread.min_terms, spread.max_terms);
  std::vector<double> raw(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& w : raw) {
    w = rng.exponential();
    total += w;
  }
  const double mass = rng.log_uniform(spread.mass_min, spread.mass_max);
  std::vector<SampledTerm> out;
  out.reserve(raw.size());
  for (const double w : raw) {
    const auto& f = fams[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(fams.size()) - 1))];
    out.push_back({mass * w / total, f, random_params(f, rng, spread)});
  }
  return out;
}

inline XMatrix combine(const std::vector<SampledTerm>& terms) {
  XMatrix x;
  for (const auto& t : terms) x = x + t.weight * generator(t.family, t.params);
  return x;
}

inline std::vector<XMatrix> sample_cone(ConeId c, std::size_t n, std::uint64_t seed,
                                        const SampleSpread& spread = {}) {
  if (n < 1) throw std::invalid_argument("sample_cone: need n >= 1");
  SplitMix64 rng(seed);
  std::vector<XMatrix> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) out.push_back(combine(sample_cone_terms(c, rng, spread)));
  return out;
}

}  // namespace xcone
