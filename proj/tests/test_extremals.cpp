#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <numbers>

#include "oracles.hpp"
#include "xcone/extremals.hpp"

using namespace xcone;
using oracles::ghz;

namespace {

GeneratorParams params_for(const GeneratorFamily& f, double r, double theta) {
  const SlotMask m = slots_of(f);
  GeneratorParams p;
  for (std::size_t k = 0; k < 4; ++k) {
    if (m.ratio[k]) p.ratio[k] = r;
    if (m.phase[k]) p.phase[k] = theta;
  }
  return p;
}

std::vector<GeneratorFamily> all_families() {
  std::vector<GeneratorFamily> fams;
  for (int i = 1; i <= 4; ++i) {
    fams.push_back(GeneratorFamily::delta(i, 'a'));
    fams.push_back(GeneratorFamily::delta(i, 'b'));
    fams.push_back(GeneratorFamily::wdelta(i));
    fams.push_back(GeneratorFamily::we3(i));
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      fams.push_back(GeneratorFamily::e2(i, j));
      fams.push_back(GeneratorFamily::we1(i, j));
      if (i < j) {
        fams.push_back(GeneratorFamily::e1(i, j));
        fams.push_back(GeneratorFamily::we2(i, j));
      }
    }
  }
  fams.push_back(GeneratorFamily::e3());
  return fams;
}

}  // namespace

TEST_CASE("generator emits the family patterns", "[extremals]") {
  const XMatrix d1 = generator(GeneratorFamily::delta(1, 'a'));
  CHECK(d1.a == std::array<double, 4>{1, 0, 0, 0});
  CHECK(frobenius_norm(d1) == 1.0);

  GeneratorParams wp;
  wp.ratio[1] = 2.0;
  wp.phase[1] = std::numbers::pi / 2;
  const XMatrix wd = generator(GeneratorFamily::wdelta(2), wp);
  CHECK(wd.a[1] == 2.0);
  CHECK(wd.b[1] == 0.5);
  CHECK(wd.z[1].real() == Catch::Approx(0.0).margin(1e-15));
  CHECK(wd.z[1].imag() == Catch::Approx(1.0));

  GeneratorParams ep;
  ep.ratio[0] = ep.ratio[3] = 1.0;
  ep.phase[0] = 0.0;
  ep.phase[3] = std::numbers::pi;
  const XMatrix e = generator(GeneratorFamily::e1(1, 4), ep);
  CHECK(e.a == std::array<double, 4>{1, 0, 0, 1});
  CHECK(e.b == std::array<double, 4>{1, 0, 0, 1});
  CHECK(e.z[0] == Complex(1, 0));
  CHECK(e.z[3].real() == Catch::Approx(-1.0));

  // params must match the family's slots exactly
  CHECK_THROWS_AS(generator(GeneratorFamily::e1(1, 4), wp), std::invalid_argument);
  CHECK_THROWS_AS(generator(GeneratorFamily::delta(1, 'a'), wp), std::invalid_argument);
  GeneratorParams bad = ep;
  bad.ratio[0] = -1.0;
  CHECK_THROWS_AS(generator(GeneratorFamily::e1(1, 4), bad), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorFamily::delta(5, 'a'), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorFamily::e1(2, 2), std::invalid_argument);
}

TEST_CASE("pattern matching is ray-normalized", "[extremals]") {
  const XMatrix plus = make_x({1, 0, 0, 1}, {1, 0, 0, 1}, {Complex(1), Complex(0), Complex(0), Complex(1)});
  CHECK(matches_family(plus, GeneratorFamily::e1(1, 4)));
  CHECK(matches_family(5.0 * plus, GeneratorFamily::e1(1, 4)));
  CHECK_FALSE(matches_family(ghz(), GeneratorFamily::e1(1, 4)));
  CHECK(matches_family(ghz(), GeneratorFamily::wdelta(1)));

  const XMatrix d2 = 3.0 * generator(GeneratorFamily::delta(2, 'a'));
  CHECK(matches_family(d2, GeneratorFamily::delta(2, 'a')));
  CHECK_FALSE(matches_family(d2, GeneratorFamily::delta(2, 'b')));
  CHECK_FALSE(matches_family(d2, GeneratorFamily::delta(1, 'a')));

  CHECK_FALSE(matches_family(XMatrix{}, GeneratorFamily::delta(1, 'a')));
  CHECK_FALSE(matches_family(XMatrix{}, GeneratorFamily::e3()));
}

TEST_CASE("generator/matches_family roundtrip over every family", "[extremals]") {
  SplitMix64 rng(31);
  for (const auto& f : all_families()) {
    for (int t = 0; t < 20; ++t) {
      const auto p = random_params(f, rng);
      const XMatrix g = generator(f, p);
      CHECK(matches_family(g, f));
      CHECK(matches_family(rng.uniform(0.5, 4.0) * g, f));
    }
  }
}

TEST_CASE("every listed family generates members of its cone", "[extremals]") {
  SplitMix64 rng(32);
  for (int ci = 0; ci < kConeCount; ++ci) {
    const auto c = static_cast<ConeId>(ci);
    for (const auto& f : extreme_ray_families(c)) {
      for (int t = 0; t < 10; ++t) {
        const XMatrix g = generator(f, random_params(f, rng));
        const bool member =
            is_primal(c) ? state_in_cone(g, c).member : witness_in_cone(g, c).member;
        INFO(cone_name(c) << " <- " << family_name(f));
        CHECK(member);
      }
    }
  }
}

TEST_CASE("sampling is deterministic and sound", "[extremals]") {
  const auto s1 = sample_cone(ConeId::A, 3, 42);
  const auto s2 = sample_cone(ConeId::A, 3, 42);
  REQUIRE(s1.size() == 3);
  CHECK(s1 == s2);
  for (const auto& x : s1) CHECK(state_in_cone(x, ConeId::A).member);

  for (const auto& x : sample_cone(ConeId::MeetABC, 3, 7))
    for (const auto& k : governing_state_inequalities(ConeId::MeetABC))
      CHECK(eval_state_inequality(x, k).satisfied);

  for (const auto& w : sample_cone(ConeId::DualMeetBC, 3, 9)) {
    const auto verdict = witness_in_cone(w, ConeId::DualMeetBC);
    CHECK(verdict.member);
  }

  // every cone, broader sweep
  SplitMix64 seeder(33);
  for (int ci = 0; ci < kConeCount; ++ci) {
    const auto c = static_cast<ConeId>(ci);
    for (const auto& x : sample_cone(c, 40, seeder.fork())) {
      const bool member = is_primal(c) ? state_in_cone(x, c).member : witness_in_cone(x, c).member;
      INFO(cone_name(c));
      CHECK(member);
    }
  }

  CHECK_THROWS_AS(sample_cone(ConeId::A, 0, 1), std::invalid_argument);
}

TEST_CASE("generators of the triple meet span the 16-dimensional X space", "[extremals]") {
  SplitMix64 rng(34);
  Eigen::MatrixXd m(144, 16);
  int row = 0;
  for (const auto& f : extreme_ray_families(ConeId::MeetABC)) {
    for (int t = 0; t < 16 && row < 144; ++t, ++row) {
      const XMatrix g = generator(f, random_params(f, rng));
      for (int k = 0; k < 4; ++k) {
        m(row, k) = g.a[static_cast<std::size_t>(k)];
        m(row, k + 4) = g.b[static_cast<std::size_t>(k)];
        m(row, k + 8) = g.z[static_cast<std::size_t>(k)].real();
        m(row, k + 12) = g.z[static_cast<std::size_t>(k)].imag();
      }
    }
  }
  m.conservativeResize(row, 16);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  CHECK(rank == 16);
}

TEST_CASE("cones are pointed: the negative of a member never belongs", "[extremals]") {
  SplitMix64 seeder(35);
  for (int ci = 0; ci < kConeCount; ++ci) {
    const auto c = static_cast<ConeId>(ci);
    for (const auto& x : sample_cone(c, 50, seeder.fork())) {
      REQUIRE(frobenius_norm(x) > 0.0);
      const XMatrix neg = -1.0 * x;
      const bool member =
          is_primal(c) ? state_in_cone(neg, c).member : witness_in_cone(neg, c).member;
      CHECK_FALSE(member);
    }
  }
}
