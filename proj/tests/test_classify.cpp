#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "xcone/classify.hpp"
#include "xcone/extremals.hpp"
#include "xcone/random_inputs.hpp"

using namespace xcone;
using oracles::ghz;
using oracles::golden_state;

TEST_CASE("lattice profile of the golden example", "[classify]") {
  const auto p = lattice_profile(golden_state());
  CHECK(p.psd);
  CHECK(p.member(ConeId::A));
  CHECK_FALSE(p.member(ConeId::B));
  CHECK_FALSE(p.member(ConeId::C));
  CHECK_FALSE(p.member(ConeId::MeetAB));
  CHECK_FALSE(p.member(ConeId::MeetBC));
  CHECK_FALSE(p.member(ConeId::MeetCA));
  CHECK_FALSE(p.member(ConeId::MeetABC));
  CHECK(p.member(ConeId::JoinAB));
  CHECK(p.member(ConeId::JoinBC));
  CHECK(p.member(ConeId::JoinCA));
  CHECK(p.member(ConeId::JoinABC));

  const auto g = lattice_profile(ghz());
  CHECK(g.psd);
  for (const ConeId c : primal_cones()) CHECK_FALSE(g.member(c));

  const auto d = lattice_profile(make_x({1, 1, 1, 1}, {1, 1, 1, 1}, std::array<Complex, 4>{}));
  for (const ConeId c : primal_cones()) CHECK(d.member(c));
}

TEST_CASE("class labels of the reference states", "[classify]") {
  const auto golden = partition_class(lattice_profile(golden_state()));
  CHECK(golden.name == "C^{2,6,1}(A)");
  CHECK(golden.signature == std::array<bool, 7>{1, 0, 0, 1, 1, 1, 1});

  CHECK(partition_class(lattice_profile(ghz())).name == "genuinely entangled");
  CHECK(partition_class(lattice_profile(make_x({1, 1, 1, 1}, {1, 1, 1, 1}, std::array<Complex, 4>{}))).name ==
        "fully X-biseparable");
  CHECK(partition_class(lattice_profile(make_x({-1, 0, 0, 0}, {0, 0, 0, 0}, std::array<Complex, 4>{}))).name ==
        "not a state");

  // scale invariance: cones are rays
  SplitMix64 rng(51);
  for (int t = 0; t < 200; ++t) {
    const XMatrix x = random_psd_x(rng);
    const auto base = partition_class(lattice_profile(x));
    const auto scaled = partition_class(lattice_profile(rng.log_uniform(0.01, 100.0) * x));
    CHECK(base.name == scaled.name);
  }
}

TEST_CASE("class labels are covariant under party relabeling", "[classify]") {
  // swapping parties A and B sends the A-version of the class to the B-version
  const XMatrix g = golden_state();
  const auto swapped_ab = partition_class(lattice_profile(permute_parties(g, {Party::B, Party::A, Party::C})));
  CHECK(swapped_ab.name == "C^{2,6,1}(B)");
  const auto swapped_ac = partition_class(lattice_profile(permute_parties(g, {Party::C, Party::B, Party::A})));
  CHECK(swapped_ac.name == "C^{2,6,1}(C)");

  const std::array<std::array<Party, 3>, 6> perms = {{{Party::A, Party::B, Party::C},
                                                      {Party::A, Party::C, Party::B},
                                                      {Party::B, Party::A, Party::C},
                                                      {Party::B, Party::C, Party::A},
                                                      {Party::C, Party::A, Party::B},
                                                      {Party::C, Party::B, Party::A}}};
  const std::array<ConeId, 7> order = {ConeId::A,      ConeId::B,      ConeId::C,     ConeId::JoinAB,
                                       ConeId::JoinBC, ConeId::JoinCA, ConeId::JoinABC};
  SplitMix64 rng(52);
  for (int t = 0; t < 200; ++t) {
    const XMatrix x = random_psd_x(rng);
    const auto base = lattice_profile(x);
    for (const auto& sigma : perms) {
      const auto moved = partition_class(lattice_profile(permute_parties(x, sigma)));
      std::array<bool, 7> expected{};
      for (std::size_t k = 0; k < 7; ++k) {
        // membership of sigma(x) in cone equals membership of x in sigma^{-1}(cone);
        // scan for the preimage instead of inverting sigma
        for (std::size_t m = 0; m < 7; ++m) {
          if (permute_cone(order[m], sigma) == order[k]) {
            expected[k] = base.member(order[m]);
            break;
          }
        }
      }
      CHECK(moved.signature == expected);
    }
  }
}

TEST_CASE("witness profiles over the dual lattice", "[classify]") {
  const XMatrix we2 = make_x({1, 0, 0, 1}, {1, 0, 0, 1}, {Complex(0), Complex(1), Complex(1), Complex(0)});
  const auto p = witness_profile(we2);
  CHECK(p.psd);
  CHECK_FALSE(p.member(ConeId::DualA));
  CHECK(p.member(ConeId::DualB));
  CHECK(p.member(ConeId::DualC));
  CHECK(p.member(ConeId::DualJoinBC));
  CHECK_FALSE(p.member(ConeId::DualJoinAB));
  CHECK_FALSE(p.member(ConeId::DualJoinABC));
  CHECK(p.member(ConeId::DualMeetABC));
  CHECK(p.member(ConeId::DualMeetBC));

  const auto d = witness_profile(generator(GeneratorFamily::delta(3, 'b')));
  for (const ConeId c : dual_cones()) CHECK(d.member(c));

  const auto off = witness_profile(make_x({0, 0, 0, 0}, {0, 0, 0, 0},
                                          {Complex(1), Complex(1), Complex(1), Complex(1)}));
  for (const ConeId c : dual_cones()) CHECK_FALSE(off.member(c));

  CHECK_THROWS_AS(partition_class(p), std::invalid_argument);
}

TEST_CASE("profiles stay consistent over a random sweep", "[classify]") {
  SplitMix64 rng(53);
  for (int t = 0; t < 2000; ++t) {
    // lattice_profile throws on any monotonicity violation
    const auto p = lattice_profile(random_psd_x(rng));
    const auto label = partition_class(p);
    CHECK_FALSE(label.name.empty());
    if (p.member(ConeId::A) || p.member(ConeId::B) || p.member(ConeId::C))
      CHECK(label.signature[6]);  // any basic membership implies the full hull
  }
  for (int t = 0; t < 500; ++t) (void)witness_profile(random_witness_candidate(rng));
}
