#pragma once

#include <cmath>
#include <cstdint>

namespace polsim {

// splitmix64; used to derive independent, reproducible per-trajectory
// streams from (base seed, trajectory index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Small deterministic RNG (xoshiro-style state advance via splitmix64
// counter). Identical output on every platform, independent of the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_stream(std::uint64_t base_seed, std::uint64_t stream) {
    return Rng(splitmix64(base_seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1], suitable for -log(u) draws.
  double uniform_positive() { return 1.0 - uniform(); }

  double exponential(double rate) { return -std::log(uniform_positive()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  // Poisson counts via exponential gaps; fine for the modest rates here.
  int poisson(double mean);

 private:
  std::uint64_t state_;
};

inline int Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  int count = 0;
  double t = exponential(1.0);
  while (t < mean) {
    ++count;
    t += exponential(1.0);
  }
  return count;
}

}  // namespace polsim
