#pragma once

#include <cstdint>
#include <string>

#include "model.hpp"

namespace rosa {

struct RatRange {
  Rat lo, hi;
};

enum class GenKind { UniformRandom, LargeMarket, HeavyHitter, Symmetric };

GenKind gen_kind_from_string(const std::string& s);
std::string gen_kind_to_string(GenKind k);

// Everything an instance draw depends on. Rationals come from the pinned
// discretization lo + (hi-lo) * k/1000, k uniform in 0..1000, so generated
// denominators stay <= 1000 times the range's.
struct GeneratorSpec {
  GenKind kind = GenKind::UniformRandom;
  int n = 2;
  int m = 1;
  std::uint64_t seed = 0;
  bool divisible = true;
  RatRange value_range{Rat(0), Rat(10)};
  RatRange budget_range{Rat(0), Rat(10)};
  RatRange tau_range{Rat(1, 4), Rat(4)};
  Rat market_constant{64};  // LargeMarket: target B_i <= OPT/(m*c)

  static GeneratorSpec from_json(const std::string& text);
  std::string to_json() const;
};

// Deterministic per (spec, seed); same spec twice gives byte-identical JSON.
Instance generate(const GeneratorSpec& spec);

// Coins derived from a seed: branch with the mechanism's indivisible
// probability (exact rational comparison), then one fair coin per agent.
CoinRealization draw_coins(std::uint64_t seed, int n, const Rat& indivisible_prob);

}  // namespace rosa
