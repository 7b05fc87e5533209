#pragma once

#include <optional>
#include <vector>

#include "model.hpp"

namespace rosa {

// First-price auction in willingness-to-pay: the highest min{B_i, v_i/tau_i}
// wins the whole item (ties: lowest index) and pays its WTP. Optimal and
// truthful when the item must go whole.
Outcome first_price_indivisible(const Instance& inst);

// The fully-private single-item mechanism: with the caller-supplied coin it
// either sells indivisibly (first price) or samples a set S, prices the item
// at a quarter of S's offline optimum and sells leftovers to the rest in
// index order.
Outcome single_fully_private(const Instance& inst, const CoinRealization& coins);

// Everything the public-budget uniform-price auction computed, kept around
// because the additive mechanism's clipping step needs the permutation and k.
struct PublicBudgetState {
  Rat epsilon;
  std::vector<int> order;            // positive-weight agents, weight-descending
  std::vector<Rat> rounded_weights;  // (1+eps)-powers, aligned with `order`
  std::vector<Rat> prefix_budgets;   // B[0..K], B[0] = 0
  int k_star = 0;                    // max k with B[k] <= w_k (0 when none)
  std::optional<Rat> clearing_constant;  // C[k], only on the B[k] > w_{k+1} branch
};

// Uniform-price single-item auction with public budgets (reported values and
// target ratios). Weights are rounded down to powers of (1+eps); conventions
// B[0] = 0 and w_{K+1} = 0 cover the corner cases the pseudocode leaves open.
Outcome single_public_budget(const Instance& inst, const Rat& epsilon,
                             PublicBudgetState* state_out = nullptr);

}  // namespace rosa
