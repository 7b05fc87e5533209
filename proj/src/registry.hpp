#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "additive.hpp"
#include "model.hpp"

namespace rosa {

// Knobs a mechanism may consume. epsilon has no default on purpose: the
// mechanisms that need it refuse to run without one.
struct MechanismOptions {
  std::optional<Rat> epsilon;
  Rat clip = Rat(1, 2);
  BuyerKind buyer = BuyerKind::ValueMaximizer;
  Rat market_constant = Rat(64);
};

// A registered mechanism: the run closure plus everything reports and audits
// need to know about it (mixture weight, privacy model, oracle, guarantee).
struct Mechanism {
  std::string id;
  bool randomized = false;
  Rat indivisible_prob = Rat(1);  // probability mass on the indivisible branch
  bool expected_truthful = true;
  bool is_mechanism = true;  // ud-alg3 is a standalone allocator, not a mechanism
  PrivacyModel privacy;      // which reported fields an audit may deviate
  std::string oracle_id;     // "single" | "matching" | "unit-demand" | "additive"
  std::function<Outcome(const Instance&, const CoinRealization&)> run;
  std::function<Rat(const Instance&)> guarantee;  // proven ratio bound; 0 = none
  std::function<std::string(const Instance&)> instance_flags;  // per-run report flags
};

// Mechanism ids wired to the CLI:
//   single-fp single-alg1 single-alg6 ud-alg2 ud-alg3 ud-alg4 ud-alg5
//   add-alg7 add-lx add-large-market
Mechanism make_mechanism(const std::string& id, const MechanismOptions& opts = {});
const std::vector<std::string>& mechanism_ids();

Rat oracle_opt(const Instance& inst, const std::string& oracle_id);
const std::vector<std::string>& oracle_ids();

}  // namespace rosa
