#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace rosa {

// One bidder: a value maximizer with budget B, per-unit item values v_j and
// a target return-on-spend ratio tau. She tolerates any payment p with
// p <= B and p * tau <= obtained value.
struct AgentProfile {
  Rat budget;               // >= 0
  std::vector<Rat> values;  // length m, each >= 0
  Rat tau;                  // > 0
};

struct Instance {
  int n = 0;
  int m = 0;
  bool divisible = true;  // every item has unit supply either way
  std::vector<AgentProfile> agents;

  void check() const;  // throws Error on invariant violations

  // w_ij = v_ij / tau_i
  Rat weight(int agent, int item) const {
    return agents[agent].values[item] / agents[agent].tau;
  }
  // min{B_i, v_ij / tau_i}: the most agent i can ever pay for all of item j.
  Rat pair_wtp(int agent, int item) const {
    return Rat::min(agents[agent].budget, weight(agent, item));
  }
};

struct Outcome {
  std::vector<std::vector<Rat>> allocation;  // n x m, entries in [0,1]
  std::vector<Rat> payments;                 // length n, each >= 0

  static Outcome zeros(int n, int m);
};

// Which fields of an agent's report can deviate from the truth.
struct PrivacyModel {
  bool budget_private = true;
  bool values_private = true;
  bool tau_private = true;

  bool any() const { return budget_private || values_private || tau_private; }
};

enum class Branch { Indivisible, Sampling };

// Every random choice a mechanism makes, owned by the caller. Mechanisms are
// pure functions of (instance, coins), which is what makes coupled-randomness
// audits and exact expectations possible.
struct CoinRealization {
  Branch procedure_choice = Branch::Indivisible;
  std::vector<bool> sample_membership;  // length n, true = agent in S
  std::uint64_t seed = 0;               // residual randomness (unused today)

  static CoinRealization indivisible(int n);
  static CoinRealization sampling(int n, std::uint32_t membership_mask);

  std::string str() const;  // "indivisible" or "sampling:S=1,3" (1-based)
};

// Eq.-(1) utility. Disengaged optional = the minus-infinity sentinel, which
// std::optional already orders strictly below every engaged value.
using Utility = std::optional<Rat>;

// min{budget, (sum_j fractions[j] * values[j]) / tau}
Rat willingness_to_pay(const Rat& budget, const std::vector<Rat>& values, const Rat& tau,
                       const std::vector<Rat>& fractions);
Rat willingness_to_pay(const AgentProfile& agent, const std::vector<Rat>& fractions);

// Total obtained value if both constraints hold, minus-infinity otherwise.
Utility agent_utility(const AgentProfile& agent, const std::vector<Rat>& fractions,
                      const Rat& payment);

struct Violation {
  enum class Kind { Supply, Budget, Ros, Integrality, AllocationRange, PaymentSign };
  Kind kind;
  int agent;  // -1 when not agent-specific
  int item;   // -1 when not item-specific
  std::string detail;
};

// Empty result iff the outcome is feasible for the instance. Violations are
// data, not errors; only dimension mismatches throw.
std::vector<Violation> validate_outcome(const Instance& inst, const Outcome& out);

Rat revenue(const Outcome& out);

const char* violation_kind_name(Violation::Kind k);

}  // namespace rosa
