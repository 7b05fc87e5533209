#include "additive.hpp"

#include <algorithm>
#include <numeric>

#include "oracle.hpp"

namespace rosa {

std::vector<std::vector<Rat>> split_budgets(const Instance& inst) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "split_budgets is part of the divisible mechanism");
  std::vector<std::vector<Rat>> b(inst.n, std::vector<Rat>(inst.m, Rat(0)));
  for (int i = 0; i < inst.n; ++i) {
    Rat total(0);
    for (const Rat& v : inst.agents[i].values) total += v;
    if (total.is_zero()) continue;  // zero-value agents never participate
    for (int j = 0; j < inst.m; ++j)
      b[i][j] = inst.agents[i].budget * inst.agents[i].values[j] / total;
  }
  return b;
}

BundleSelection bundle_select(const std::vector<Rat>& values, const Rat& tau, const Rat& budget,
                              const std::vector<Rat>& z_row) {
  if (values.size() != z_row.size())
    throw Error(Error::Kind::Dimension, "bundle_select: row length mismatch");
  const int m = static_cast<int>(values.size());
  BundleSelection sel;
  sel.threshold_sets.resize(m);
  sel.utilities.resize(m);
  for (int j = 0; j < m; ++j) {
    Rat bundle_value(0);
    for (int jj = 0; jj < m; ++jj) {
      if (z_row[jj] >= z_row[j]) {
        sel.threshold_sets[j].push_back(jj);
        bundle_value += values[jj];
      }
    }
    sel.utilities[j] = z_row[j] * bundle_value;
  }
  sel.chosen = 0;
  for (int j = 1; j < m; ++j)
    if (sel.utilities[j] > sel.utilities[sel.chosen]) sel.chosen = j;

  sel.allocation.assign(m, Rat(0));
  for (int jj : sel.threshold_sets[sel.chosen]) sel.allocation[jj] = z_row[sel.chosen];
  sel.payment = Rat::min(budget, sel.utilities[sel.chosen] / tau);
  return sel;
}

AdditivePartialResult additive_partial(const Instance& inst, const Rat& epsilon) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "additive_partial runs on divisible instances");
  if (epsilon.sign() <= 0) throw Error(Error::Kind::Parameter, "epsilon must be positive");

  auto sub_budgets = split_budgets(inst);

  AdditivePartialResult res;
  res.z.assign(inst.n, std::vector<Rat>(inst.m, Rat(0)));
  res.z_payments.assign(inst.n, std::vector<Rat>(inst.m, Rat(0)));
  res.sub_auctions.resize(inst.m);

  for (int j = 0; j < inst.m; ++j) {
    Instance sub;
    sub.n = inst.n;
    sub.m = 1;
    sub.divisible = true;
    for (int i = 0; i < inst.n; ++i)
      sub.agents.push_back({sub_budgets[i][j], {inst.agents[i].values[j]}, inst.agents[i].tau});

    SubAuctionRecord& rec = res.sub_auctions[j];
    Outcome o = single_public_budget(sub, epsilon, &rec.state);
    for (int i = 0; i < inst.n; ++i) {
      res.z[i][j] = o.allocation[i][0];
      res.z_payments[i][j] = o.payments[i];
    }

    // Supply clipping: zero the (k+1)-th agent of this item's permutation if
    // she got less than half. k = participants means there is nobody to clip.
    int k = rec.state.k_star;
    if (k < static_cast<int>(rec.state.order.size())) {
      int a = rec.state.order[k];
      rec.clipped_agent = a;
      if (res.z[a][j] < Rat(1, 2)) {
        res.z[a][j] = Rat(0);
        res.z_payments[a][j] = Rat(0);
      }
    }
  }

  res.outcome = Outcome::zeros(inst.n, inst.m);
  for (int i = 0; i < inst.n; ++i) {
    BundleSelection sel = bundle_select(inst.agents[i].values, inst.agents[i].tau,
                                        inst.agents[i].budget, res.z[i]);
    res.outcome.allocation[i] = sel.allocation;
    res.outcome.payments[i] = sel.payment;
  }

  res.z_dot_p = Rat(0);
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.m; ++j) res.z_dot_p += res.z[i][j] * res.z_payments[i][j];
  return res;
}

Outcome sub_budget_greedy(const Instance& inst,
                          const std::vector<std::vector<Rat>>& sub_budgets) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "sub_budget_greedy runs on divisible instances");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.m; ++j)
      if (inst.weight(i, j).sign() > 0) pairs.push_back({i, j});
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    Rat wa = inst.weight(a.first, a.second), wb = inst.weight(b.first, b.second);
    if (wa != wb) return wa > wb;
    return a < b;
  });

  Outcome out = Outcome::zeros(inst.n, inst.m);
  std::vector<Rat> remaining(inst.m, Rat(1));
  for (auto [i, j] : pairs) {
    Rat w = inst.weight(i, j);
    Rat x = Rat::min(remaining[j], sub_budgets[i][j] / w);
    if (x.is_zero()) continue;
    out.allocation[i][j] = x;
    out.payments[i] += w * x;
    remaining[j] -= x;
  }
  return out;
}

std::vector<std::vector<Rat>> lx_greedy(const std::vector<std::vector<Rat>>& weights,
                                        const std::vector<Rat>& budgets) {
  const int n = static_cast<int>(weights.size());
  const int m = n ? static_cast<int>(weights[0].size()) : 0;
  if (static_cast<int>(budgets.size()) != n)
    throw Error(Error::Kind::Dimension, "lx_greedy: budget count mismatch");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (weights[i][j].sign() > 0) pairs.push_back({i, j});
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    const Rat& wa = weights[a.first][a.second];
    const Rat& wb = weights[b.first][b.second];
    if (wa != wb) return wa > wb;
    return a < b;
  });

  std::vector<std::vector<Rat>> alloc(n, std::vector<Rat>(m, Rat(0)));
  std::vector<Rat> residual = budgets;  // C_i
  std::vector<Rat> supply(m, Rat(1));   // s_j
  for (auto [i, j] : pairs) {
    const Rat& w = weights[i][j];
    if (residual[i] > w * supply[j]) {
      alloc[i][j] = supply[j];
      residual[i] -= w * supply[j];
      supply[j] = Rat(0);
    } else {
      Rat x = residual[i] / w;
      alloc[i][j] = x;
      supply[j] -= x;
      residual[i] = Rat(0);
    }
  }
  return alloc;
}

Purchase posted_price_purchase(const AgentProfile& agent, const std::vector<Rat>& prices,
                               const std::vector<Rat>& supplies, BuyerKind kind) {
  const int m = static_cast<int>(agent.values.size());
  if (static_cast<int>(prices.size()) != m || static_cast<int>(supplies.size()) != m)
    throw Error(Error::Kind::Dimension, "posted_price_purchase: length mismatch");
  for (const Rat& r : prices)
    if (r.sign() < 0) throw Error(Error::Kind::Parameter, "negative price");
  for (const Rat& s : supplies)
    if (s.sign() < 0) throw Error(Error::Kind::Parameter, "negative supply");

  // Scan order: free items first by index, then value-per-price ratio
  // v_j/(tau*r_j) descending, ties by index.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    bool fa = prices[a].is_zero(), fb = prices[b].is_zero();
    if (fa != fb) return fa;
    if (fa && fb) return a < b;
    Rat ra = agent.values[a] / (agent.tau * prices[a]);
    Rat rb = agent.values[b] / (agent.tau * prices[b]);
    if (ra != rb) return ra > rb;
    return a < b;
  });

  Purchase res;
  res.fractions.assign(m, Rat(0));
  res.spend = Rat(0);
  Rat value(0);
  for (int j : order) {
    if (supplies[j].is_zero()) continue;
    const Rat& r = prices[j];
    const Rat& v = agent.values[j];
    Rat f;
    if (r.is_zero()) {
      f = supplies[j];  // free: take it all, both buyer kinds
    } else if (kind == BuyerKind::QuasiLinear) {
      if (agent.tau * r > v) break;  // ratio < 1 and falling: done
      f = Rat::min(supplies[j], (agent.budget - res.spend) / r);
    } else {
      f = Rat::min(supplies[j], (agent.budget - res.spend) / r);
      Rat ros_gap = agent.tau * r - v;
      if (ros_gap.sign() > 0) {
        // largest f with tau*(spend + f*r) <= value + f*v
        f = Rat::min(f, (value - agent.tau * res.spend) / ros_gap);
      }
      if (f.sign() < 0) f = Rat(0);
    }
    if (f.sign() <= 0) continue;
    res.fractions[j] = f;
    res.spend += f * r;
    value += f * v;
  }
  return res;
}

Outcome lx_random_sampling(const Instance& inst, const CoinRealization& coins, BuyerKind kind) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "lx_random_sampling runs on divisible instances");
  if (static_cast<int>(coins.sample_membership.size()) != inst.n)
    throw Error(Error::Kind::Dimension, "coin membership vector has wrong length");

  // Sampled group T: rows outside T are zeroed so the greedy never sees them.
  std::vector<std::vector<Rat>> weights(inst.n, std::vector<Rat>(inst.m, Rat(0)));
  std::vector<Rat> budgets(inst.n, Rat(0));
  for (int i = 0; i < inst.n; ++i) {
    if (!coins.sample_membership[i]) continue;
    budgets[i] = inst.agents[i].budget;
    for (int j = 0; j < inst.m; ++j) weights[i][j] = inst.weight(i, j);
  }
  auto sampled_alloc = lx_greedy(weights, budgets);

  std::vector<Rat> prices(inst.m, Rat(0));
  for (int j = 0; j < inst.m; ++j) {
    Rat item_revenue(0);
    for (int i = 0; i < inst.n; ++i) item_revenue += sampled_alloc[i][j] * weights[i][j];
    prices[j] = item_revenue / Rat(6);
  }

  Outcome out = Outcome::zeros(inst.n, inst.m);
  std::vector<Rat> supplies(inst.m, Rat(1));
  for (int i = 0; i < inst.n; ++i) {
    if (coins.sample_membership[i]) continue;
    Purchase p = posted_price_purchase(inst.agents[i], prices, supplies, kind);
    out.allocation[i] = p.fractions;
    out.payments[i] = p.spend;
    for (int j = 0; j < inst.m; ++j) supplies[j] -= p.fractions[j];
  }
  return out;
}

LargeMarketResult additive_large_market(const Instance& inst, const CoinRealization& coins,
                                        const Rat& market_constant) {
  if (market_constant.sign() <= 0)
    throw Error(Error::Kind::Parameter, "large-market constant must be positive");
  LargeMarketResult res;
  res.outcome = lx_random_sampling(inst, coins, BuyerKind::ValueMaximizer);
  res.opt = opt_additive(inst).objective;
  res.budget_cap = res.opt / (Rat(inst.m) * market_constant);
  res.assumption_holds = true;
  for (const AgentProfile& a : inst.agents)
    if (a.budget > res.budget_cap) res.assumption_holds = false;
  return res;
}

}  // namespace rosa
