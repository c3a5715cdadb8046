#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xcone/xmatrix.hpp"

namespace xcone {

// The 11 primal cones of partially separable states, plus their 11 duals.
// A, B, C are the cones separable with respect to the bipartitions A-BC,
// B-CA, C-AB; meets are intersections, joins are convex hulls. The dual of a
// meet is the join of the duals and vice versa, so dual(c) is an involution
// implemented by an index offset.
enum class ConeId : int {
  A = 0,
  B,
  C,
  MeetAB,
  MeetBC,
  MeetCA,
  MeetABC,
  JoinAB,
  JoinBC,
  JoinCA,
  JoinABC,
  DualA,
  DualB,
  DualC,
  DualMeetAB,   // A° + B°
  DualMeetBC,   // B° + C°
  DualMeetCA,   // C° + A°
  DualMeetABC,  // A° + B° + C°
  DualJoinAB,   // A° ∩ B°
  DualJoinBC,   // B° ∩ C°
  DualJoinCA,   // C° ∩ A°
  DualJoinABC,  // A° ∩ B° ∩ C°
};

constexpr int kPrimalConeCount = 11;
constexpr int kConeCount = 22;

constexpr bool is_primal(ConeId c) { return static_cast<int>(c) < kPrimalConeCount; }
constexpr bool is_dual(ConeId c) { return !is_primal(c); }

constexpr ConeId dual(ConeId c) {
  const int i = static_cast<int>(c);
  return static_cast<ConeId>(i < kPrimalConeCount ? i + kPrimalConeCount : i - kPrimalConeCount);
}

inline const std::array<ConeId, 11>& primal_cones() {
  static const std::array<ConeId, 11> cs = {
      ConeId::A,      ConeId::B,      ConeId::C,      ConeId::MeetAB,
      ConeId::MeetBC, ConeId::MeetCA, ConeId::MeetABC, ConeId::JoinAB,
      ConeId::JoinBC, ConeId::JoinCA, ConeId::JoinABC};
  return cs;
}

inline const std::array<ConeId, 11>& dual_cones() {
  static const std::array<ConeId, 11> cs = {
      ConeId::DualA,      ConeId::DualB,      ConeId::DualC,      ConeId::DualMeetAB,
      ConeId::DualMeetBC, ConeId::DualMeetCA, ConeId::DualMeetABC, ConeId::DualJoinAB,
      ConeId::DualJoinBC, ConeId::DualJoinCA, ConeId::DualJoinABC};
  return cs;
}

// Shell-safe names; duals carry a "dual:" prefix naming the primal cone they
// are dual to, e.g. dual:B^C is (B ∩ C)° = B° + C°.
inline std::string cone_name(ConeId c) {
  static const std::array<const char*, 11> primal = {
      "A", "B", "C", "A^B", "B^C", "C^A", "A^B^C", "A+B", "B+C", "C+A", "A+B+C"};
  const int i = static_cast<int>(c);
  if (i < kPrimalConeCount) return primal[static_cast<std::size_t>(i)];
  return std::string("dual:") + primal[static_cast<std::size_t>(i - kPrimalConeCount)];
}

inline std::optional<ConeId> parse_cone(std::string_view s) {
  for (int i = 0; i < kConeCount; ++i) {
    const auto c = static_cast<ConeId>(i);
    if (cone_name(c) == s) return c;
  }
  return std::nullopt;
}

// Hasse arrows of the primal inclusion diagram, as (smaller, larger) pairs.
inline const std::vector<std::pair<ConeId, ConeId>>& primal_inclusion_arrows() {
  static const std::vector<std::pair<ConeId, ConeId>> arrows = {
      {ConeId::MeetABC, ConeId::MeetAB}, {ConeId::MeetABC, ConeId::MeetBC},
      {ConeId::MeetABC, ConeId::MeetCA}, {ConeId::MeetAB, ConeId::A},
      {ConeId::MeetAB, ConeId::B},       {ConeId::MeetBC, ConeId::B},
      {ConeId::MeetBC, ConeId::C},       {ConeId::MeetCA, ConeId::C},
      {ConeId::MeetCA, ConeId::A},       {ConeId::A, ConeId::JoinAB},
      {ConeId::A, ConeId::JoinCA},       {ConeId::B, ConeId::JoinAB},
      {ConeId::B, ConeId::JoinBC},       {ConeId::C, ConeId::JoinBC},
      {ConeId::C, ConeId::JoinCA},       {ConeId::JoinAB, ConeId::JoinABC},
      {ConeId::JoinBC, ConeId::JoinABC}, {ConeId::JoinCA, ConeId::JoinABC}};
  return arrows;
}

// Dual diagram arrows: duality reverses inclusion.
inline std::vector<std::pair<ConeId, ConeId>> dual_inclusion_arrows() {
  std::vector<std::pair<ConeId, ConeId>> arrows;
  arrows.reserve(primal_inclusion_arrows().size());
  for (const auto& [lo, hi] : primal_inclusion_arrows()) arrows.emplace_back(dual(hi), dual(lo));
  return arrows;
}

// Action of a party relabeling on the cone ids: the cone separable w.r.t.
// bipartition P-(rest) maps to the cone of sigma(P). sigma maps slot->party
// with the same meaning as permute_parties.
inline ConeId permute_cone(ConeId c, const std::array<Party, 3>& sigma) {
  auto img = [&](Party p) { return sigma[static_cast<std::size_t>(p)]; };
  auto basic = [&](Party p) {
    switch (img(p)) {
      case Party::A: return ConeId::A;
      case Party::B: return ConeId::B;
      default: return ConeId::C;
    }
  };
  auto pairwise = [&](Party p, Party q, bool meet) {
    const Party u = img(p), v = img(q);
    const bool hasA = (u == Party::A || v == Party::A);
    const bool hasB = (u == Party::B || v == Party::B);
    if (hasA && hasB) return meet ? ConeId::MeetAB : ConeId::JoinAB;
    if (hasB) return meet ? ConeId::MeetBC : ConeId::JoinBC;
    return meet ? ConeId::MeetCA : ConeId::JoinCA;
  };
  const bool dual_side = is_dual(c);
  const ConeId base = dual_side ? dual(c) : c;
  ConeId out;
  switch (base) {
    case ConeId::A: out = basic(Party::A); break;
    case ConeId::B: out = basic(Party::B); break;
    case ConeId::C: out = basic(Party::C); break;
    case ConeId::MeetAB: out = pairwise(Party::A, Party::B, true); break;
    case ConeId::MeetBC: out = pairwise(Party::B, Party::C, true); break;
    case ConeId::MeetCA: out = pairwise(Party::C, Party::A, true); break;
    case ConeId::JoinAB: out = pairwise(Party::A, Party::B, false); break;
    case ConeId::JoinBC: out = pairwise(Party::B, Party::C, false); break;
    case ConeId::JoinCA: out = pairwise(Party::C, Party::A, false); break;
    default: out = base; break;  // A^B^C and A+B+C are permutation invariant
  }
  return dual_side ? dual(out) : out;
}

}  // namespace xcone
