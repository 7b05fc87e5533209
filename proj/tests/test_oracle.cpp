#include <doctest.h>

#include <functional>
#include <numeric>

#include "generator.hpp"
#include "oracle.hpp"
#include "simplex.hpp"

using namespace rosa;

namespace {

Instance single_item(std::vector<std::tuple<long, long, long>> agents) {
  Instance inst;
  inst.n = static_cast<int>(agents.size());
  inst.m = 1;
  inst.divisible = true;
  for (auto [b, v, t] : agents) inst.agents.push_back({Rat(b), {Rat(v)}, Rat(t)});
  return inst;
}

Instance matrix_instance(std::vector<Rat> budgets, std::vector<std::vector<Rat>> values,
                         std::vector<Rat> taus, bool divisible = true) {
  Instance inst;
  inst.n = static_cast<int>(budgets.size());
  inst.m = static_cast<int>(values[0].size());
  inst.divisible = divisible;
  for (int i = 0; i < inst.n; ++i) inst.agents.push_back({budgets[i], values[i], taus[i]});
  return inst;
}

// Independent grid oracle: best objective over allocations with every x_i a
// multiple of 1/steps and sum <= 1. A lower-bound certificate for the
// single-item optimum, cross-checking the greedy from below.
Rat grid_single_item(const Instance& inst, int steps) {
  int n = inst.n;
  std::vector<int> units(n, 0);
  Rat best(0);
  for (;;) {
    int total = std::accumulate(units.begin(), units.end(), 0);
    if (total <= steps) {
      Rat obj(0);
      for (int i = 0; i < n; ++i) {
        Rat x(units[i], steps);
        obj += Rat::min(inst.agents[i].budget, x * inst.weight(i, 0));
      }
      if (obj > best) best = obj;
    }
    int pos = 0;
    while (pos < n) {
      if (++units[pos] <= steps) break;
      units[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("simplex solves small LPs exactly") {
  // max x + y s.t. x <= 2, y <= 3, x + y <= 4
  std::vector<std::vector<Rat>> a{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}};
  std::vector<Rat> b{Rat(2), Rat(3), Rat(4)};
  std::vector<Rat> c{Rat(1), Rat(1)};
  LpSolution sol = solve_lp_max(a, b, c);
  CHECK(sol.objective == Rat(4));

  // fractional optimum: max 3x + 5y s.t. x + 2y <= 1, 3x + y <= 1
  a = {{Rat(1), Rat(2)}, {Rat(3), Rat(1)}};
  b = {Rat(1), Rat(1)};
  c = {Rat(3), Rat(5)};
  sol = solve_lp_max(a, b, c);
  CHECK(sol.x[0] == Rat(1, 5));
  CHECK(sol.x[1] == Rat(2, 5));
  CHECK(sol.objective == Rat(13, 5));

  CHECK_THROWS_AS(solve_lp_max({{Rat(-1)}}, {Rat(1)}, {Rat(1)}), Error);  // unbounded
}

TEST_CASE("opt_single_item: frozen worked example") {
  // agents (B,v,tau): (3,8,1),(2,5,1),(10,2,1) -> x=(3/8, 2/5, 9/40), 109/20
  Instance inst = single_item({{3, 8, 1}, {2, 5, 1}, {10, 2, 1}});
  OptSolution sol = opt_single_item(inst);
  CHECK(sol.objective == Rat(109, 20));
  CHECK(sol.outcome.allocation[0][0] == Rat(3, 8));
  CHECK(sol.outcome.allocation[1][0] == Rat(2, 5));
  CHECK(sol.outcome.allocation[2][0] == Rat(9, 40));
  CHECK(validate_outcome(inst, sol.outcome).empty());
  CHECK(revenue(sol.outcome) == sol.objective);

  // the coarse grid cannot beat it, and the LP route agrees exactly
  CHECK(grid_single_item(inst, 40) <= sol.objective);
  CHECK(opt_additive(inst).objective == sol.objective);
}

TEST_CASE("opt_single_item: trivial cases") {
  Instance one = single_item({{1000000, 4, 2}});
  OptSolution sol = opt_single_item(one);
  CHECK(sol.objective == Rat(2));
  CHECK(sol.outcome.allocation[0][0] == Rat(1));

  Instance inst = single_item({{3, 8, 1}, {2, 5, 1}});
  CHECK(opt_single_item(inst, {}).objective == Rat(0));

  Instance zero = single_item({{3, 0, 1}, {2, 0, 1}});
  CHECK(opt_single_item(zero).objective == Rat(0));

  Instance two_items = matrix_instance({Rat(1)}, {{Rat(1), Rat(1)}}, {Rat(1)});
  CHECK_THROWS_AS(opt_single_item(two_items), Error);
}

TEST_CASE("opt_unit_demand: frozen worked examples") {
  // 1 agent, 2 items, v=(8,2), tau=1, B=4 -> half of item 1, revenue 4
  Instance a = matrix_instance({Rat(4)}, {{Rat(8), Rat(2)}}, {Rat(1)});
  OptSolution sa = opt_unit_demand(a);
  CHECK(sa.objective == Rat(4));
  CHECK(sa.outcome.allocation[0][0] == Rat(1, 2));
  CHECK(sa.outcome.allocation[0][1] == Rat(0));

  // 2 agents, 1 item -> 5 via fractions 3/8 and 2/5
  Instance b = single_item({{3, 8, 1}, {2, 5, 1}});
  CHECK(opt_unit_demand(b).objective == Rat(5));

  Instance zero = matrix_instance({Rat(3), Rat(2)}, {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}},
                                  {Rat(1), Rat(1)});
  CHECK(opt_unit_demand(zero).objective == Rat(0));
}

TEST_CASE("opt_unit_demand: solution form and size guard") {
  Instance inst = matrix_instance({Rat(5), Rat(7), Rat(2)},
                                  {{Rat(3), Rat(9)}, {Rat(4), Rat(4)}, {Rat(8), Rat(1)}},
                                  {Rat(1), Rat(2), Rat(1)});
  OptSolution sol = opt_unit_demand(inst);
  for (int i = 0; i < inst.n; ++i) {
    int nonzero = 0;
    for (int j = 0; j < inst.m; ++j)
      if (!sol.outcome.allocation[i][j].is_zero()) ++nonzero;
    CHECK(nonzero <= 1);
  }
  CHECK(validate_outcome(inst, sol.outcome).empty());

  Instance big;
  big.n = 30;
  big.m = 3;
  big.divisible = true;
  for (int i = 0; i < big.n; ++i)
    big.agents.push_back({Rat(1), {Rat(1), Rat(1), Rat(1)}, Rat(1)});
  CHECK_THROWS_AS(opt_unit_demand(big), Error);
}

TEST_CASE("opt_additive: frozen worked examples") {
  // 1 agent, 2 items, B=8, v=(6,2), tau=1 -> full allocation, objective 8
  Instance a = matrix_instance({Rat(8)}, {{Rat(6), Rat(2)}}, {Rat(1)});
  OptSolution sa = opt_additive(a);
  CHECK(sa.objective == Rat(8));
  CHECK(sa.outcome.allocation[0][0] == Rat(1));
  CHECK(sa.outcome.allocation[0][1] == Rat(1));

  // 2 agents sharing 1 item, w rows (6),(2), B=(1,10) -> 1 + 5/3 = 8/3
  Instance b = single_item({{1, 6, 1}, {10, 2, 1}});
  OptSolution sb = opt_additive(b);
  CHECK(sb.objective == Rat(8, 3));
  CHECK(sb.outcome.allocation[0][0] == Rat(1, 6));
  CHECK(sb.outcome.allocation[1][0] == Rat(5, 6));
  CHECK(grid_single_item(b, 60) <= sb.objective);

  Instance zero = matrix_instance({Rat(3)}, {{Rat(0), Rat(0)}}, {Rat(1)});
  CHECK(opt_additive(zero).objective == Rat(0));
}

TEST_CASE("opt_matching_indivisible: frozen worked examples") {
  // weights [[5,2],[3,4]] -> diagonal matching, value 9
  Instance inst = matrix_instance({Rat(100), Rat(100)}, {{Rat(5), Rat(2)}, {Rat(3), Rat(4)}},
                                  {Rat(1), Rat(1)}, false);
  OptSolution sol = opt_matching_indivisible(inst);
  CHECK(sol.objective == Rat(9));
  CHECK(sol.outcome.allocation[0][0] == Rat(1));
  CHECK(sol.outcome.allocation[1][1] == Rat(1));

  Instance one = matrix_instance({Rat(7)}, {{Rat(9)}}, {Rat(1)}, false);
  CHECK(opt_matching_indivisible(one).objective == Rat(7));

  Instance zero = matrix_instance({Rat(7)}, {{Rat(0)}}, {Rat(1)}, false);
  CHECK(opt_matching_indivisible(zero).objective == Rat(0));
}

TEST_CASE("matching oracle agrees with brute-force enumeration") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorSpec spec;
    spec.kind = GenKind::UniformRandom;
    spec.n = 1 + static_cast<int>(seed % 5);
    spec.m = 1 + static_cast<int>((seed * 7) % 4);
    spec.seed = seed;
    spec.divisible = false;
    Instance inst = generate(spec);

    std::vector<std::vector<Rat>> w(inst.n, std::vector<Rat>(inst.m));
    for (int i = 0; i < inst.n; ++i)
      for (int j = 0; j < inst.m; ++j) w[i][j] = inst.pair_wtp(i, j);

    OptSolution sol = opt_matching_indivisible(inst);

    Rat best(0);
    std::vector<int> assign(inst.n, -1);
    std::function<void(int, unsigned)> rec = [&](int i, unsigned used_mask) {
      if (i == inst.n) {
        Rat total(0);
        for (int k = 0; k < inst.n; ++k)
          if (assign[k] >= 0) total += w[k][assign[k]];
        if (total > best) best = total;
        return;
      }
      rec(i + 1, used_mask);
      for (int j = 0; j < inst.m; ++j) {
        if (used_mask >> j & 1) continue;
        assign[i] = j;
        rec(i + 1, used_mask | (1u << j));
        assign[i] = -1;
      }
    };
    rec(0, 0);
    CHECK(sol.objective == best);
  }
}

TEST_CASE("matching oracle: Hungarian path at 15x15 with a known optimum") {
  // Both sides exceed the bitmask-DP cutoff, so this exercises the
  // augmenting-path solver. Diagonal entries dominate every off-diagonal one
  // by >= 99, so the unique optimal matching is the diagonal:
  // sum_{i}(100+i) = 1605.
  const int s = 15;
  Instance inst;
  inst.n = s;
  inst.m = s;
  inst.divisible = false;
  for (int i = 0; i < s; ++i) {
    AgentProfile a;
    a.budget = Rat(1000000);
    a.tau = Rat(1);
    for (int j = 0; j < s; ++j)
      a.values.push_back(i == j ? Rat(100 + i) : Rat(1, i + j + 2));
    inst.agents.push_back(std::move(a));
  }
  OptSolution sol = opt_matching_indivisible(inst);
  CHECK(sol.objective == Rat(1605));
  for (int i = 0; i < s; ++i) CHECK(sol.outcome.allocation[i][i] == Rat(1));

  // transposed weight structure gives the same value
  Instance flipped = inst;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) flipped.agents[i].values[j] = inst.agents[j].values[i];
  CHECK(opt_matching_indivisible(flipped).objective == Rat(1605));
}

TEST_CASE("matching oracle: transposed DP path when only m is large") {
  // n = 2, m = 16: the solver transposes and runs the DP over agents.
  Instance inst;
  inst.n = 2;
  inst.m = 16;
  inst.divisible = false;
  for (int i = 0; i < 2; ++i) {
    AgentProfile a;
    a.budget = Rat(1000);
    a.tau = Rat(1);
    for (int j = 0; j < 16; ++j) a.values.push_back(Rat((7 * (i + 1) * (j + 3)) % 23));
    inst.agents.push_back(std::move(a));
  }
  OptSolution sol = opt_matching_indivisible(inst);

  // brute force: both agents pick distinct items (or skip)
  Rat best(0);
  for (int j0 = -1; j0 < 16; ++j0)
    for (int j1 = -1; j1 < 16; ++j1) {
      if (j0 >= 0 && j0 == j1) continue;
      Rat total(0);
      if (j0 >= 0) total += inst.pair_wtp(0, j0);
      if (j1 >= 0) total += inst.pair_wtp(1, j1);
      if (total > best) best = total;
    }
  CHECK(sol.objective == best);
}

TEST_CASE("oracle sanity properties on random instances") {
  for (std::uint64_t seed = 100; seed < 115; ++seed) {
    GeneratorSpec spec;
    spec.kind = GenKind::UniformRandom;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.m = 1 + static_cast<int>(seed % 3);
    spec.seed = seed;
    Instance inst = generate(spec);

    OptSolution ud = opt_unit_demand(inst);
    OptSolution add = opt_additive(inst);
    Instance ind = inst;
    ind.divisible = false;
    OptSolution match = opt_matching_indivisible(ind);

    // fractional unit-demand dominates the integral matching
    CHECK(ud.objective >= match.objective);
    // additive dominates unit-demand (strictly larger feasible set)
    CHECK(add.objective >= ud.objective);

    // upper bounds on the additive first-best
    Rat budget_sum(0), weight_sum(0);
    for (int i = 0; i < inst.n; ++i) {
      budget_sum += inst.agents[i].budget;
      for (int j = 0; j < inst.m; ++j) weight_sum += inst.weight(i, j);
    }
    CHECK(add.objective <= budget_sum);
    CHECK(add.objective <= weight_sum);

    // oracle outcomes feasible with objective == revenue
    for (const OptSolution* sol : {&ud, &add}) {
      CHECK(validate_outcome(inst, sol->outcome).empty());
      CHECK(revenue(sol->outcome) == sol->objective);
    }
    CHECK(validate_outcome(ind, match.outcome).empty());

    // removing an agent never helps
    Instance smaller = inst;
    smaller.n -= 1;
    smaller.agents.pop_back();
    CHECK(opt_unit_demand(smaller).objective <= ud.objective);
    CHECK(opt_additive(smaller).objective <= add.objective);
  }
}

TEST_CASE("opt_single_item equals opt_additive on m=1 (two independent solvers)") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    GeneratorSpec spec;
    spec.kind = GenKind::UniformRandom;
    spec.n = 1 + static_cast<int>(seed % 6);
    spec.m = 1;
    spec.seed = seed;
    Instance inst = generate(spec);
    CHECK(opt_single_item(inst).objective == opt_additive(inst).objective);
  }
}
