#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xcone/cones.hpp"
#include "xcone/criteria.hpp"
#include "xcone/tolerance.hpp"
#include "xcone/xmatrix.hpp"

namespace xcone {

// Membership map over all 11 cones of one side of the lattice. For the state
// side psd is positivity; for the witness side it is diagonal nonnegativity.
struct LatticeProfile {
  bool dual_side = false;
  std::array<bool, 11> membership{};
  bool psd = false;

  bool member(ConeId c) const {
    if (is_dual(c) != dual_side)
      throw std::invalid_argument("LatticeProfile: cone from the other side of the lattice");
    return membership[static_cast<std::size_t>(static_cast<int>(c) % kPrimalConeCount)];
  }
};

namespace detail {

inline void assert_monotone(const LatticeProfile& p) {
  const auto arrows = p.dual_side ? dual_inclusion_arrows()
                                  : std::vector<std::pair<ConeId, ConeId>>(
                                        primal_inclusion_arrows().begin(),
                                        primal_inclusion_arrows().end());
  for (const auto& [lo, hi] : arrows) {
    if (p.member(lo) && !p.member(hi))
      throw std::logic_error("lattice profile violates inclusion " + cone_name(lo) +
                             " -> " + cone_name(hi) + "; tolerance pathology");
  }
}

}  // namespace detail

// Evaluates all 11 primal memberships. Inclusions of the lattice are checked
// and a violation is an internal error rather than a silently odd profile.
inline LatticeProfile lattice_profile(const XMatrix& x, const Tolerance& tol = {}) {
  LatticeProfile p;
  p.dual_side = false;
  p.psd = is_psd_x(x, tol);
  for (std::size_t k = 0; k < 11; ++k)
    p.membership[k] = state_in_cone(x, primal_cones()[k], tol).member;
  detail::assert_monotone(p);
  return p;
}

inline LatticeProfile witness_profile(const XMatrix& w, const Tolerance& tol = {}) {
  LatticeProfile p;
  p.dual_side = true;
  p.psd = detail::diagonals_nonnegative(w, tol);
  for (std::size_t k = 0; k < 11; ++k)
    p.membership[k] = witness_in_cone(w, dual_cones()[k], tol).member;
  detail::assert_monotone(p);
  return p;
}

// Signature bit order: A, B, C, A+B, B+C, C+A, A+B+C.
struct ClassLabel {
  std::string name;
  std::array<bool, 7> signature{};
};

// Partial-separability class of a state profile. The three named class
// shapes (with their system permutations) get their standard names; every
// other signature is reported verbatim.
inline ClassLabel partition_class(const LatticeProfile& p) {
  if (p.dual_side) throw std::invalid_argument("partition_class: expected a state profile");
  ClassLabel label;
  const std::array<ConeId, 7> order = {ConeId::A,      ConeId::B,      ConeId::C,
                                       ConeId::JoinAB, ConeId::JoinBC, ConeId::JoinCA,
                                       ConeId::JoinABC};
  for (std::size_t k = 0; k < 7; ++k) label.signature[k] = p.member(order[k]);

  if (!p.psd) {
    label.name = "not a state";
    return label;
  }
  if (!p.member(ConeId::JoinABC)) {
    label.name = "genuinely entangled";
    return label;
  }
  if (p.member(ConeId::MeetABC)) {
    label.name = "fully X-biseparable";
    return label;
  }

  using Sig = std::array<bool, 7>;
  const std::array<std::pair<Sig, const char*>, 7> named = {{
      {Sig{1, 0, 0, 1, 1, 1, 1}, "C^{2,6,1}(A)"},
      {Sig{0, 1, 0, 1, 1, 1, 1}, "C^{2,6,1}(B)"},
      {Sig{0, 0, 1, 1, 1, 1, 1}, "C^{2,6,1}(C)"},
      {Sig{0, 0, 0, 1, 1, 1, 1}, "C^{2,4}"},
      {Sig{0, 0, 0, 1, 0, 1, 1}, "C^{2,3,1}(A)"},
      {Sig{0, 0, 0, 1, 1, 0, 1}, "C^{2,3,1}(B)"},
      {Sig{0, 0, 0, 0, 1, 1, 1}, "C^{2,3,1}(C)"},
  }};
  for (const auto& [sig, name] : named) {
    if (sig == label.signature) {
      label.name = name;
      return label;
    }
  }
  label.name = "sig:";
  for (bool bit : label.signature) label.name += bit ? '1' : '0';
  return label;
}

}  // namespace xcone
