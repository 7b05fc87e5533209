#pragma once

#include <vector>

#include "model.hpp"
#include "single.hpp"

namespace rosa {

// Proportional sub-budgets b_ij = B_i * v_ij / sum_j' v_ij'. All-zero-value
// rows map to all-zero sub-budgets.
std::vector<std::vector<Rat>> split_budgets(const Instance& inst);

// One agent's bundle choice from her per-item z row: threshold sets
// T(j) = {j' : z_j' >= z_j}, utilities U(j) = z_j * sum_{T(j)} v_j',
// h = argmax U (ties: lowest item), final row x_j' = z_h on T(h) and the
// payment min{B, U(h)/tau}.
struct BundleSelection {
  std::vector<std::vector<int>> threshold_sets;  // T(j) per item
  std::vector<Rat> utilities;                    // U(j) per item
  int chosen = -1;                               // h
  std::vector<Rat> allocation;                   // final row
  Rat payment;
};
BundleSelection bundle_select(const std::vector<Rat>& values, const Rat& tau, const Rat& budget,
                              const std::vector<Rat>& z_row);

// Per-item record of the sub-auction run inside the additive mechanism.
struct SubAuctionRecord {
  PublicBudgetState state;
  int clipped_agent = -1;  // agent whose z was zeroed, -1 if none
};

struct AdditivePartialResult {
  Outcome outcome;
  std::vector<std::vector<Rat>> z;              // clipped per-item allocations
  std::vector<std::vector<Rat>> z_payments;     // clipped per-item payments p_i(z_j)
  std::vector<SubAuctionRecord> sub_auctions;   // length m
  Rat z_dot_p;                                  // sum_ij z_ij * p_i(z_j)
};

// The partially-private additive mechanism: split budgets, run the public-
// budget single-item auction per item, clip the (k+1)-th agent's sliver,
// then let every agent keep her best uniform-fraction bundle at her full
// willingness to pay. Budgets and values are treated as public; tau is the
// private field.
AdditivePartialResult additive_partial(const Instance& inst, const Rat& epsilon);

// Greedy for the sub-budget constrained relaxation: every pair spends up to
// its own sub-budget, agents may buy many items. Analysis lower bound.
Outcome sub_budget_greedy(const Instance& inst, const std::vector<std::vector<Rat>>& sub_budgets);

// Water-filling greedy over positive weights in decreasing order; returns
// the allocation only (the enclosing mechanism defines payments).
std::vector<std::vector<Rat>> lx_greedy(const std::vector<std::vector<Rat>>& weights,
                                        const std::vector<Rat>& budgets);

enum class BuyerKind { ValueMaximizer, QuasiLinear };

struct Purchase {
  std::vector<Rat> fractions;
  Rat spend;
};

// Posted-price buyer behavior. Items are scanned by v_j/(tau*r_j) descending
// (free items first, ties by index). The quasi-linear buyer stops at ratio 1;
// the value maximizer keeps buying with the exact boundary fraction that
// keeps both budget and aggregate RoS satisfied.
Purchase posted_price_purchase(const AgentProfile& agent, const std::vector<Rat>& prices,
                               const std::vector<Rat>& supplies, BuyerKind kind);

// Random sampling mechanism on the liquid-welfare reduction w_ij = v_ij/tau_i:
// the sampled half only sets per-item prices w(A_j^T)/6; the rest buy at
// posted prices in index order with the chosen buyer behavior.
Outcome lx_random_sampling(const Instance& inst, const CoinRealization& coins, BuyerKind kind);

struct LargeMarketResult {
  Outcome outcome;
  bool assumption_holds;  // every B_i <= opt/(m*c)
  Rat opt;                // additive first-best used for the check
  Rat budget_cap;         // opt/(m*c)
};

// The large-market mechanism is exactly lx_random_sampling with value-
// maximizer buyers; the guarantee is conditional, so the assumption check
// rides along in the result.
LargeMarketResult additive_large_market(const Instance& inst, const CoinRealization& coins,
                                        const Rat& market_constant);

}  // namespace rosa
