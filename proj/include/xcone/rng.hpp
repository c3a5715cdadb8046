#pragma once

#include <cmath>
#include <cstdint>

namespace xcone {

// SplitMix64: tiny deterministic generator threaded explicitly through the
// sampling code so identical seeds give identical output on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  // uniform integer in [lo, hi]
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // standard exponential, used for Dirichlet-style simplex weights
  double exponential() {
    double u;
    do {
      u = u01();
    } while (u <= 0.0);
    return -std::log(u);
  }

  // derive an independent stream, e.g. for per-shard seeding
  std::uint64_t fork() { return next() ^ 0xd1b54a32d192ed03ULL; }

 private:
  std::uint64_t state_;
};

}  // namespace xcone
