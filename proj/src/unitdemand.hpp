#pragma once

#include <vector>

#include "model.hpp"

namespace rosa {

enum class PairKey {
  LexMinWtpThenValue,  // (min{B_i, v_ij/tau_i}, v_ij) descending
  WeightDescending,    // v_ij/tau_i descending
};

// Total order over all agent-item pairs; ties always break by (agent, item)
// ascending so every scan in the repo is reproducible.
std::vector<std::pair<int, int>> pair_order(const Instance& inst, PairKey key);

// Greedy matching in WTP order: match (i,j) when both sides are free,
// x_ij = 1, charge min{B_i, v_ij/tau_i}. Works on divisible instances too
// (the allocation is still integral).
Outcome greedy_matching_indivisible(const Instance& inst);

struct GreedyStep {
  int agent, item;
  Rat remaining_before;  // R_j at the start of this pair's iteration
  Rat assigned;          // 0 on empty iterations
  Rat payment;
};

// Full record of one greedy-clip run; the structural-lemma checks replay
// coupled traces from these.
struct GreedyTrace {
  std::vector<GreedyStep> steps;  // one per scanned pair, empty iterations included
  std::vector<std::vector<Rat>> remaining_after;  // per step: all m fractions
  std::vector<Rat> final_remaining;               // length m
  std::vector<Rat> item_revenue;                  // W_j = sum of buyers' payments
  std::vector<int> bought_item;  // per agent: item bought, -1 if none
  std::vector<int> bought_step;  // per agent: step index of the buy, -1 if none
};

// Greedy matching with item supply clipping: scan pairs by weight, an agent
// buys at most once, an item stops selling once its remaining fraction is at
// most `clip`. Pairs whose agent is outside `subset` are empty iterations
// (the coupled-trace lemmas depend on that convention). Zero-weight pairs
// use the B/0 = +inf convention: x = R_j at zero payment.
Outcome greedy_clip(const Instance& inst, const std::vector<int>& subset, const Rat& clip,
                    GreedyTrace* trace = nullptr);
Outcome greedy_clip(const Instance& inst, const Rat& clip, GreedyTrace* trace = nullptr);

// Auxiliary mechanism (Alg. 4 shape): sampling branch forces each remaining
// agent onto the item she buys in the all-agents greedy solution, at reserve
// prices set from the sampled half. NOT truthful; kept as the analysis
// comparator the final mechanism is coupled against.
Outcome unit_demand_aux(const Instance& inst, const CoinRealization& coins,
                        const Rat& clip = Rat(1, 2));

// Final truthful mechanism: sampling branch lets each remaining agent pick
// the most profitable affordable item and charges her full willingness to
// pay for what she got.
Outcome unit_demand_final(const Instance& inst, const CoinRealization& coins,
                          const Rat& clip = Rat(1, 2));

}  // namespace rosa
