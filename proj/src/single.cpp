#include "single.hpp"

#include <algorithm>

#include "oracle.hpp"

namespace rosa {

Outcome first_price_indivisible(const Instance& inst) {
  if (inst.m != 1) throw Error(Error::Kind::Dimension, "first_price_indivisible needs m == 1");
  int winner = 0;
  Rat best = inst.pair_wtp(0, 0);
  for (int i = 1; i < inst.n; ++i) {
    Rat wtp = inst.pair_wtp(i, 0);
    if (wtp > best) {
      best = wtp;
      winner = i;
    }
  }
  Outcome out = Outcome::zeros(inst.n, inst.m);
  out.allocation[winner][0] = Rat(1);
  out.payments[winner] = best;
  return out;
}

Outcome single_fully_private(const Instance& inst, const CoinRealization& coins) {
  if (inst.m != 1) throw Error(Error::Kind::Dimension, "single_fully_private needs m == 1");
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension,
                "single_fully_private sells fractions; use single-fp for indivisible items");
  if (static_cast<int>(coins.sample_membership.size()) != inst.n)
    throw Error(Error::Kind::Dimension, "coin membership vector has wrong length");
  if (coins.procedure_choice == Branch::Indivisible) return first_price_indivisible(inst);

  std::vector<int> sample, rest;
  for (int i = 0; i < inst.n; ++i)
    (coins.sample_membership[i] ? sample : rest).push_back(i);

  Rat reserve = opt_single_item(inst, sample).objective / Rat(4);

  Outcome out = Outcome::zeros(inst.n, inst.m);
  Rat remaining(1);
  for (int i : rest) {  // fixed arrival order: ascending index
    if (remaining.is_zero()) break;
    if (reserve > inst.weight(i, 0)) continue;
    // reserve == 0 admits everyone; the item then goes for free.
    Rat x = reserve.is_zero() ? remaining
                              : Rat::min(inst.agents[i].budget / reserve, remaining);
    if (x.is_zero()) continue;
    out.allocation[i][0] = x;
    out.payments[i] = x * reserve;
    remaining -= x;
  }
  return out;
}

Outcome single_public_budget(const Instance& inst, const Rat& epsilon,
                             PublicBudgetState* state_out) {
  if (inst.m != 1) throw Error(Error::Kind::Dimension, "single_public_budget needs m == 1");
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension,
                "single_public_budget sells fractions; use single-fp for indivisible items");
  if (epsilon.sign() <= 0) throw Error(Error::Kind::Parameter, "epsilon must be positive");

  PublicBudgetState st;
  st.epsilon = epsilon;
  const Rat base = Rat(1) + epsilon;

  // Zero-weight agents can never pay anything without breaking RoS; they sit
  // out and always receive nothing.
  for (int i = 0; i < inst.n; ++i)
    if (inst.weight(i, 0).sign() > 0) st.order.push_back(i);

  Outcome out = Outcome::zeros(inst.n, inst.m);
  if (st.order.empty()) {
    if (state_out) *state_out = st;
    return out;
  }

  std::vector<Rat> exact(inst.n, Rat(0));
  std::vector<Rat> rounded(inst.n, Rat(0));
  for (int i : st.order) {
    exact[i] = inst.weight(i, 0);
    rounded[i] = floor_power(base, exact[i]);
  }
  std::sort(st.order.begin(), st.order.end(), [&](int a, int b) {
    if (rounded[a] != rounded[b]) return rounded[a] > rounded[b];
    return a < b;
  });
  const int participants = static_cast<int>(st.order.size());
  st.rounded_weights.reserve(participants);
  for (int i : st.order) st.rounded_weights.push_back(rounded[i]);

  st.prefix_budgets.assign(1, Rat(0));  // B[0] = 0
  for (int t = 0; t < participants; ++t)
    st.prefix_budgets.push_back(st.prefix_budgets.back() + inst.agents[st.order[t]].budget);

  st.k_star = 0;
  for (int k = 1; k <= participants; ++k)
    if (st.prefix_budgets[k] <= st.rounded_weights[k - 1]) st.k_star = k;

  const int k = st.k_star;
  const Rat& bk = st.prefix_budgets[k];
  const Rat w_next = k < participants ? st.rounded_weights[k] : Rat(0);  // w_{k+1}

  if (bk > w_next) {
    // Market-clearing on budgets: everyone in the top k pays per-unit C[k].
    Rat ck = ceil_power(base, bk);
    st.clearing_constant = ck;
    for (int t = 0; t < k; ++t) {
      int i = st.order[t];
      Rat x = inst.agents[i].budget / (base * bk);
      out.allocation[i][0] = x;
      out.payments[i] = x * ck;
    }
  } else if (w_next.sign() > 0) {
    // Market-clearing on the (k+1)-th weight, with the two-level pricing
    // that keeps the price-setting agent pinned in the lower level.
    for (int t = 0; t < k; ++t) {
      int i = st.order[t];
      Rat x = inst.agents[i].budget / (base * w_next);
      out.allocation[i][0] = x;
      out.payments[i] =
          st.rounded_weights[t] > w_next ? x * base * w_next : x * w_next;
    }
    int i = st.order[k];  // agent k+1
    Rat x = Rat(1) / base - bk / (base * w_next);
    out.allocation[i][0] = x;
    out.payments[i] = x * w_next;
  }
  // Remaining case: k == participants with B[k] == 0, i.e. every participant
  // has a zero budget. Nothing can be sold for money; all-zero outcome.

  if (state_out) *state_out = st;
  return out;
}

}  // namespace rosa
