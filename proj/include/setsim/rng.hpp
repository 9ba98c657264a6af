#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "setsim/errors.hpp"

namespace setsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Disjoint stream ids hashed together with the scenario seed so every
// (ue, purpose) pair gets an independent deterministic sequence.
enum class RngStream : std::uint64_t {
  Traffic = 0x51,
  Placement = 0x52,
  Shadowing = 0x53,
  Cell = 0x54,
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t id, RngStream stream) {
  std::uint64_t h = splitmix64(base ^ 0xa5a5a5a55a5a5a5aULL);
  h = splitmix64(h ^ (id + 0x100000001ULL));
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return h;
}

// mt19937_64 output mapped through fixed transforms. The engine sequence is
// fully specified by the standard; the std distribution objects are not, so
// the variate math lives here to keep traces identical across toolchains.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Inverse-CDF exponential; rejects the measure-zero u that would yield a
  // zero gap so arrival times stay strictly increasing.
  double exponential(double mean) {
    if (mean <= 0.0) throw DomainError("exponential: mean must be > 0");
    for (;;) {
      const double g = -mean * std::log1p(-uniform01());
      if (g > 0.0) return g;
    }
  }

  double normal(double mu, double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return mu + sigma * spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return mu + sigma * r * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace setsim
