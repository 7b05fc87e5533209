#pragma once

#include <vector>

#include "model.hpp"

namespace rosa {

// Offline first-best solutions: the benchmark every mechanism's guarantee is
// measured against. All exact; payments are p_i* = min{B_i, value_i/tau_i},
// realized as x * w with x capped by B/w so budgets never bind loosely.
struct OptSolution {
  Outcome outcome;
  Rat objective;  // == revenue(outcome)
};

// Fractional-knapsack optimum of selling the single item to `subset`.
// Sort by w_i = v_i/tau_i descending (ties: lower index), give each agent
// x = min{remaining, B_i/w_i}. Throws Dimension unless m == 1.
OptSolution opt_single_item(const Instance& inst, const std::vector<int>& subset);
OptSolution opt_single_item(const Instance& inst);  // subset = all agents

// Unit-demand first-best with the paper's solution form: each agent receives
// fractions of at most one item. Exhaustive over all (m+1)^n assignments,
// each assignment solved exactly per item; guarded by (m+1)^n <= 10^7.
OptSolution opt_unit_demand(const Instance& inst);

// Additive first-best: exact rational LP
//   max sum t_i  s.t.  t_i <= B_i,  t_i <= sum_j x_ij w_ij,
//                      sum_i x_ij <= 1,  x >= 0.
OptSolution opt_additive(const Instance& inst);

// Maximum-weight bipartite matching on weights min{B_i, v_ij/tau_i}.
// Bitmask DP when one side is small, exact Hungarian otherwise.
OptSolution opt_matching_indivisible(const Instance& inst);

}  // namespace rosa
