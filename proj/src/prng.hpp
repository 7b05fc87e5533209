#pragma once

#include <cstdint>

#include "rational.hpp"

namespace rosa {

// The one pinned generator used anywhere randomness is needed (instance
// generation, coin sampling, Monte Carlo). splitmix64 is tiny, documented,
// and identical on every platform, so every experiment replays bit-for-bit
// from its seed.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound). Fixed-point multiply, no rejection loop,
  // bias < 2^-64 per draw which is irrelevant for test-corpus generation.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Bernoulli(p) with exact rational comparison of next()/2^64 against p.
  bool coin(const Rat& p) {
    Rat u = Rat::from_u64(next()) / Rat::from_mpz(mpz_class(1) << 64);
    return u < p;
  }

  bool fair_coin() { return (next() & 1ull) != 0; }
};

}  // namespace rosa
