#include "unitdemand.hpp"

#include <algorithm>
#include <numeric>

namespace rosa {

std::vector<std::pair<int, int>> pair_order(const Instance& inst, PairKey key) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(inst.n) * inst.m);
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.m; ++j) pairs.push_back({i, j});

  if (key == PairKey::LexMinWtpThenValue) {
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      Rat wa = inst.pair_wtp(a.first, a.second), wb = inst.pair_wtp(b.first, b.second);
      if (wa != wb) return wa > wb;
      const Rat& va = inst.agents[a.first].values[a.second];
      const Rat& vb = inst.agents[b.first].values[b.second];
      if (va != vb) return va > vb;
      return a < b;
    });
  } else {
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      Rat wa = inst.weight(a.first, a.second), wb = inst.weight(b.first, b.second);
      if (wa != wb) return wa > wb;
      return a < b;
    });
  }
  return pairs;
}

Outcome greedy_matching_indivisible(const Instance& inst) {
  Outcome out = Outcome::zeros(inst.n, inst.m);
  std::vector<char> agent_done(inst.n, 0), item_done(inst.m, 0);
  for (auto [i, j] : pair_order(inst, PairKey::LexMinWtpThenValue)) {
    if (agent_done[i] || item_done[j]) continue;
    agent_done[i] = 1;
    item_done[j] = 1;
    out.allocation[i][j] = Rat(1);
    out.payments[i] = inst.pair_wtp(i, j);
  }
  return out;
}

Outcome greedy_clip(const Instance& inst, const std::vector<int>& subset, const Rat& clip,
                    GreedyTrace* trace) {
  if (clip.sign() <= 0 || clip >= Rat(1))
    throw Error(Error::Kind::Parameter, "clip must lie in (0,1)");
  std::vector<char> in_subset(inst.n, 0);
  for (int i : subset) {
    if (i < 0 || i >= inst.n)
      throw Error(Error::Kind::Dimension, "greedy_clip: subset index out of range");
    in_subset[i] = 1;
  }

  Outcome out = Outcome::zeros(inst.n, inst.m);
  std::vector<Rat> remaining(inst.m, Rat(1));
  std::vector<char> bought(inst.n, 0);

  if (trace) {
    trace->steps.clear();
    trace->remaining_after.clear();
    trace->bought_item.assign(inst.n, -1);
    trace->bought_step.assign(inst.n, -1);
  }

  int step_index = 0;
  for (auto [i, j] : pair_order(inst, PairKey::WeightDescending)) {
    GreedyStep step{i, j, remaining[j], Rat(0), Rat(0)};
    if (in_subset[i] && !bought[i] && remaining[j] > clip) {
      Rat w = inst.weight(i, j);
      Rat x = w.is_zero() ? remaining[j]  // B/0 = +inf
                          : Rat::min(remaining[j], inst.agents[i].budget / w);
      if (x.sign() > 0) {
        out.allocation[i][j] = x;
        out.payments[i] = w * x;
        remaining[j] -= x;
        bought[i] = 1;
        step.assigned = x;
        step.payment = out.payments[i];
        if (trace) {
          trace->bought_item[i] = j;
          trace->bought_step[i] = step_index;
        }
      }
    }
    if (trace) {
      trace->steps.push_back(step);
      trace->remaining_after.push_back(remaining);
    }
    ++step_index;
  }

  if (trace) {
    trace->final_remaining = remaining;
    trace->item_revenue.assign(inst.m, Rat(0));
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.m; ++j)
        if (out.allocation[i][j].sign() > 0) trace->item_revenue[j] += out.payments[i];
  }
  return out;
}

Outcome greedy_clip(const Instance& inst, const Rat& clip, GreedyTrace* trace) {
  std::vector<int> all(inst.n);
  std::iota(all.begin(), all.end(), 0);
  return greedy_clip(inst, all, clip, trace);
}

Outcome unit_demand_aux(const Instance& inst, const CoinRealization& coins, const Rat& clip) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "unit_demand_aux runs on divisible instances");
  if (static_cast<int>(coins.sample_membership.size()) != inst.n)
    throw Error(Error::Kind::Dimension, "coin membership vector has wrong length");
  if (coins.procedure_choice == Branch::Indivisible) return greedy_matching_indivisible(inst);

  // z fixes which item each remaining agent is allowed to buy.
  GreedyTrace tz;
  greedy_clip(inst, clip, &tz);

  std::vector<int> sample, rest;
  for (int i = 0; i < inst.n; ++i)
    (coins.sample_membership[i] ? sample : rest).push_back(i);

  GreedyTrace ts;
  greedy_clip(inst, sample, clip, &ts);
  std::vector<Rat> reserve(inst.m);
  for (int j = 0; j < inst.m; ++j) reserve[j] = ts.item_revenue[j] / Rat(12);

  Outcome out = Outcome::zeros(inst.n, inst.m);
  std::vector<Rat> remaining(inst.m, Rat(1));
  for (int i : rest) {
    int k = tz.bought_item[i];
    if (k < 0) continue;  // she buys nothing in z, so nothing here either
    if (reserve[k] > inst.weight(i, k)) continue;
    Rat x = reserve[k].is_zero()
                ? remaining[k]
                : Rat::min(remaining[k], inst.agents[i].budget / reserve[k]);
    if (x.is_zero()) continue;
    out.allocation[i][k] = x;
    out.payments[i] = reserve[k] * x;
    remaining[k] -= x;
  }
  return out;
}

Outcome unit_demand_final(const Instance& inst, const CoinRealization& coins, const Rat& clip) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "unit_demand_final runs on divisible instances");
  if (static_cast<int>(coins.sample_membership.size()) != inst.n)
    throw Error(Error::Kind::Dimension, "coin membership vector has wrong length");
  if (coins.procedure_choice == Branch::Indivisible) return greedy_matching_indivisible(inst);

  std::vector<int> sample, rest;
  for (int i = 0; i < inst.n; ++i)
    (coins.sample_membership[i] ? sample : rest).push_back(i);

  GreedyTrace ts;
  greedy_clip(inst, sample, clip, &ts);
  std::vector<Rat> reserve(inst.m);
  for (int j = 0; j < inst.m; ++j) reserve[j] = ts.item_revenue[j] / Rat(12);

  Outcome out = Outcome::zeros(inst.n, inst.m);
  std::vector<Rat> remaining(inst.m, Rat(1));
  for (int i : rest) {
    // Most profitable affordable item; ties go to the lower index. A best
    // profit of zero means she buys nothing (the charge would be zero anyway).
    int best = -1;
    Rat best_profit(0);
    Rat best_x(0);
    for (int j = 0; j < inst.m; ++j) {
      if (reserve[j] > inst.weight(i, j)) continue;
      Rat x = reserve[j].is_zero()
                  ? remaining[j]
                  : Rat::min(inst.agents[i].budget / reserve[j], remaining[j]);
      Rat profit = inst.agents[i].values[j] * x;
      if (profit > best_profit) {
        best = j;
        best_profit = profit;
        best_x = x;
      }
    }
    if (best < 0) continue;
    out.allocation[i][best] = best_x;
    out.payments[i] = Rat::min(inst.weight(i, best) * best_x, inst.agents[i].budget);
    remaining[best] -= best_x;
  }
  return out;
}

}  // namespace rosa
