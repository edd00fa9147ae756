#pragma once

#include <cstdint>

namespace freeorder {

// SplitMix64. The reproducibility contract everywhere in this project is
// "same seed, same bytes out", so the generator is fixed here rather than
// delegated to the standard library.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on {0, ..., bound-1}, rejection-sampled to kill modulo bias.
  std::uint64_t bounded(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  // Uniform in [0, 1).
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

// Per-stream seed derivation: one SplitMix64 round of (master + stream * phi).
// Used to give every Monte-Carlo trial its own independent, reproducible seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master + stream * 0x9e3779b97f4a7c15ull);
  return g.next();
}

}  // namespace freeorder
