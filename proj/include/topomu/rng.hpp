#pragma once

// Deterministic RNG. splitmix64 derives independent per-task streams from a
// master seed, so parallel runs reproduce the sequential results.

#include <cstdint>

namespace topomu {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc909ULL) {}

  uint64_t next() { return splitmix64(state_); }

  // Uniform in [0, bound).
  uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }

  int intIn(int lo, int hi) {  // inclusive
    return lo + int(below(uint64_t(hi - lo + 1)));
  }

  bool chance(double p) { return double(next() >> 11) / double(1ULL << 53) < p; }

  // Stream for subtask `index`, independent of draws on this stream.
  Rng fork(uint64_t index) const {
    uint64_t s = state_ + 0x9e3779b97f4a7c15ULL * (index + 1);
    return Rng(splitmix64(s));
  }

 private:
  uint64_t state_;
};

}  // namespace topomu
