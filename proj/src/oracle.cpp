#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "simplex.hpp"

namespace rosa {

OptSolution opt_single_item(const Instance& inst, const std::vector<int>& subset) {
  if (inst.m != 1) throw Error(Error::Kind::Dimension, "opt_single_item needs m == 1");
  for (int i : subset)
    if (i < 0 || i >= inst.n)
      throw Error(Error::Kind::Dimension, "opt_single_item: subset index out of range");

  std::vector<int> order = subset;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Rat wa = inst.weight(a, 0), wb = inst.weight(b, 0);
    if (wa != wb) return wa > wb;
    return a < b;
  });

  OptSolution sol;
  sol.outcome = Outcome::zeros(inst.n, inst.m);
  sol.objective = Rat(0);
  Rat remaining(1);
  for (int i : order) {
    if (remaining.is_zero()) break;
    Rat w = inst.weight(i, 0);
    if (w.is_zero()) break;  // descending order: nothing payable follows
    Rat x = Rat::min(remaining, inst.agents[i].budget / w);
    if (x.is_zero()) continue;
    sol.outcome.allocation[i][0] = x;
    sol.outcome.payments[i] = x * w;
    sol.objective += sol.outcome.payments[i];
    remaining -= x;
  }
  return sol;
}

OptSolution opt_single_item(const Instance& inst) {
  std::vector<int> all(inst.n);
  std::iota(all.begin(), all.end(), 0);
  return opt_single_item(inst, all);
}

namespace {

// Exact greedy for one item given the agents assigned to it.
void fill_item_greedy(const Instance& inst, int item, const std::vector<int>& agents,
                      Outcome& out, Rat& objective) {
  std::vector<int> order = agents;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Rat wa = inst.weight(a, item), wb = inst.weight(b, item);
    if (wa != wb) return wa > wb;
    return a < b;
  });
  Rat remaining(1);
  for (int i : order) {
    if (remaining.is_zero()) break;
    Rat w = inst.weight(i, item);
    if (w.is_zero()) break;
    Rat x = Rat::min(remaining, inst.agents[i].budget / w);
    if (x.is_zero()) continue;
    out.allocation[i][item] = x;
    out.payments[i] = x * w;
    objective += out.payments[i];
    remaining -= x;
  }
}

}  // namespace

OptSolution opt_unit_demand(const Instance& inst) {
  if (inst.m == 1) return opt_single_item(inst);

  double combos = std::pow(static_cast<double>(inst.m + 1), inst.n);
  if (combos > 1e7)
    throw Error(Error::Kind::Size,
                "opt_unit_demand: (m+1)^n exceeds 10^7; shrink the instance");

  std::vector<int> assign(inst.n, -1);  // -1 = no item, else item index
  OptSolution best;
  best.outcome = Outcome::zeros(inst.n, inst.m);
  best.objective = Rat(0);

  std::vector<std::vector<int>> per_item(inst.m);
  for (;;) {
    for (auto& v : per_item) v.clear();
    for (int i = 0; i < inst.n; ++i)
      if (assign[i] >= 0) per_item[assign[i]].push_back(i);

    Outcome out = Outcome::zeros(inst.n, inst.m);
    Rat objective(0);
    for (int j = 0; j < inst.m; ++j) fill_item_greedy(inst, j, per_item[j], out, objective);
    if (objective > best.objective) {
      best.outcome = std::move(out);
      best.objective = objective;
    }

    // odometer over {-1, 0, ..., m-1}^n
    int pos = 0;
    while (pos < inst.n) {
      if (++assign[pos] < inst.m) break;
      assign[pos] = -1;
      ++pos;
    }
    if (pos == inst.n) break;
  }
  return best;
}

OptSolution opt_additive(const Instance& inst) {
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "opt_additive is the divisible benchmark");
  const int n = inst.n, m = inst.m;
  const int vars = n + n * m;  // t_i then x_ij row-major
  auto xvar = [&](int i, int j) { return n + i * m + j; };

  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  for (int i = 0; i < n; ++i) {  // t_i <= B_i
    std::vector<Rat> row(vars, Rat(0));
    row[i] = Rat(1);
    a.push_back(std::move(row));
    b.push_back(inst.agents[i].budget);
  }
  for (int i = 0; i < n; ++i) {  // t_i - sum_j w_ij x_ij <= 0
    std::vector<Rat> row(vars, Rat(0));
    row[i] = Rat(1);
    for (int j = 0; j < m; ++j) row[xvar(i, j)] = -inst.weight(i, j);
    a.push_back(std::move(row));
    b.push_back(Rat(0));
  }
  for (int j = 0; j < m; ++j) {  // sum_i x_ij <= 1
    std::vector<Rat> row(vars, Rat(0));
    for (int i = 0; i < n; ++i) row[xvar(i, j)] = Rat(1);
    a.push_back(std::move(row));
    b.push_back(Rat(1));
  }
  std::vector<Rat> c(vars, Rat(0));
  for (int i = 0; i < n; ++i) c[i] = Rat(1);

  LpSolution lp = solve_lp_max(a, b, c);

  OptSolution sol;
  sol.outcome = Outcome::zeros(n, m);
  for (int i = 0; i < n; ++i) {
    sol.outcome.payments[i] = lp.x[i];
    for (int j = 0; j < m; ++j) sol.outcome.allocation[i][j] = lp.x[xvar(i, j)];
  }
  sol.objective = lp.objective;
  return sol;
}

namespace {

// Matching by bitmask DP over items (callers transpose so m <= 14 here):
// dp[i][mask] = best weight matching the first i agents into items of mask,
// where agents may also stay unmatched.
struct DpResult {
  Rat value;
  std::vector<std::pair<int, int>> matched;  // (agent, item)
};

DpResult matching_dp(const std::vector<std::vector<Rat>>& w) {
  const int n = static_cast<int>(w.size());
  const int m = n ? static_cast<int>(w[0].size()) : 0;
  const std::size_t masks = std::size_t(1) << m;
  std::vector<std::vector<Rat>> dp(n + 1, std::vector<Rat>(masks, Rat(0)));
  std::vector<std::vector<int>> choice(n + 1, std::vector<int>(masks, -1));
  for (int i = 1; i <= n; ++i) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      dp[i][mask] = dp[i - 1][mask];
      choice[i][mask] = -1;
      for (int j = 0; j < m; ++j) {
        if (!(mask >> j & 1)) continue;
        if (w[i - 1][j].is_zero()) continue;
        Rat cand = dp[i - 1][mask ^ (std::size_t(1) << j)] + w[i - 1][j];
        if (cand > dp[i][mask]) {
          dp[i][mask] = cand;
          choice[i][mask] = j;
        }
      }
    }
  }
  DpResult res;
  res.value = dp[n][masks - 1];
  std::size_t mask = masks - 1;
  for (int i = n; i >= 1; --i) {
    int j = choice[i][mask];
    if (j >= 0) {
      res.matched.push_back({i - 1, j});
      mask ^= std::size_t(1) << j;
    }
  }
  return res;
}

// Exact Hungarian (potentials + shortest augmenting path) on the square
// zero-padded cost matrix, minimizing -w. Used past the DP size cutoff.
DpResult matching_hungarian(const std::vector<std::vector<Rat>>& w) {
  const int n = static_cast<int>(w.size());
  const int m = n ? static_cast<int>(w[0].size()) : 0;
  const int s = std::max(n, m);
  Rat inf(1);
  for (const auto& row : w)
    for (const Rat& x : row) inf += x.abs();

  auto cost = [&](int i, int j) -> Rat {
    if (i < n && j < m) return -w[i][j];
    return Rat(0);
  };

  std::vector<Rat> u(s + 1, Rat(0)), v(s + 1, Rat(0));
  std::vector<int> p(s + 1, 0), way(s + 1, 0);
  for (int i = 1; i <= s; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<Rat> minv(s + 1, inf);
    std::vector<char> used(s + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      Rat delta = inf;
      for (int j = 1; j <= s; ++j) {
        if (used[j]) continue;
        Rat cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= s; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  DpResult res;
  res.value = Rat(0);
  for (int j = 1; j <= s; ++j) {
    int i = p[j];
    if (i >= 1 && i <= n && j <= m && !w[i - 1][j - 1].is_zero()) {
      res.matched.push_back({i - 1, j - 1});
      res.value += w[i - 1][j - 1];
    }
  }
  return res;
}

}  // namespace

OptSolution opt_matching_indivisible(const Instance& inst) {
  std::vector<std::vector<Rat>> w(inst.n, std::vector<Rat>(inst.m));
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.m; ++j) w[i][j] = inst.pair_wtp(i, j);

  DpResult res;
  if (inst.m <= 14) {
    res = matching_dp(w);
  } else if (inst.n <= 14) {
    std::vector<std::vector<Rat>> wt(inst.m, std::vector<Rat>(inst.n));
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.m; ++j) wt[j][i] = w[i][j];
    res = matching_dp(wt);
    for (auto& pr : res.matched) std::swap(pr.first, pr.second);
  } else {
    res = matching_hungarian(w);
  }

  OptSolution sol;
  sol.outcome = Outcome::zeros(inst.n, inst.m);
  sol.objective = res.value;
  for (auto [i, j] : res.matched) {
    sol.outcome.allocation[i][j] = Rat(1);
    sol.outcome.payments[i] = w[i][j];
  }
  return sol;
}

}  // namespace rosa
