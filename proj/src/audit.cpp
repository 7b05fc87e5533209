#include "audit.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

#include "oracle.hpp"
#include "prng.hpp"

namespace rosa {

using nlohmann::ordered_json;

DeviationGrid DeviationGrid::defaults() {
  DeviationGrid g;
  g.tau_factors = {Rat(1, 4), Rat(1, 2), Rat(2, 3), Rat(1), Rat(3, 2), Rat(2), Rat(4)};
  g.budget_factors = g.tau_factors;
  g.value_factors = g.tau_factors;
  g.joint = false;
  return g;
}

namespace {

struct Misreport {
  Rat budget_factor{1}, value_factor{1}, tau_factor{1};
  bool trivial() const {
    return budget_factor == Rat(1) && value_factor == Rat(1) && tau_factor == Rat(1);
  }
};

std::vector<Misreport> build_misreports(const PrivacyModel& privacy, const DeviationGrid& grid) {
  for (const auto* fs : {&grid.tau_factors, &grid.budget_factors, &grid.value_factors})
    for (const Rat& f : *fs)
      if (f.sign() <= 0) throw Error(Error::Kind::Parameter, "deviation factors must be positive");

  std::vector<Misreport> out;
  if (grid.joint) {
    std::vector<Rat> one{Rat(1)};
    const auto& bf = privacy.budget_private ? grid.budget_factors : one;
    const auto& vf = privacy.values_private ? grid.value_factors : one;
    const auto& tf = privacy.tau_private ? grid.tau_factors : one;
    for (const Rat& b : bf)
      for (const Rat& v : vf)
        for (const Rat& t : tf) {
          Misreport m{b, v, t};
          if (!m.trivial()) out.push_back(m);
        }
  } else {
    if (privacy.budget_private)
      for (const Rat& f : grid.budget_factors)
        if (f != Rat(1)) out.push_back({f, Rat(1), Rat(1)});
    if (privacy.values_private)
      for (const Rat& f : grid.value_factors)
        if (f != Rat(1)) out.push_back({Rat(1), f, Rat(1)});
    if (privacy.tau_private)
      for (const Rat& f : grid.tau_factors)
        if (f != Rat(1)) out.push_back({Rat(1), Rat(1), f});
  }
  return out;
}

Instance apply_misreport(const Instance& inst, int agent, const Misreport& mis) {
  Instance dev = inst;
  AgentProfile& a = dev.agents[agent];
  a.budget *= mis.budget_factor;
  a.tau *= mis.tau_factor;
  for (Rat& v : a.values) v *= mis.value_factor;
  return dev;
}

std::vector<CoinRealization> build_coin_set(const Mechanism& mech, int n,
                                            const AuditOptions& opts, std::string& space) {
  std::vector<CoinRealization> coins;
  if (!mech.randomized) {
    space = "deterministic";
    coins.push_back(CoinRealization::indivisible(n));
    return coins;
  }
  if (n <= opts.max_coin_enum_n) {
    space = "exhaustive";
    if (mech.indivisible_prob.sign() > 0) coins.push_back(CoinRealization::indivisible(n));
    if (mech.indivisible_prob < Rat(1))
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        coins.push_back(CoinRealization::sampling(n, mask));
    return coins;
  }
  if (!opts.allow_sampled_coins)
    throw Error(Error::Kind::Size,
                "coin enumeration needs n <= " + std::to_string(opts.max_coin_enum_n) +
                    "; enable sampled coins for larger instances");
  space = "sampled";
  SplitMix64 rng(opts.seed);
  if (mech.indivisible_prob.sign() > 0) coins.push_back(CoinRealization::indivisible(n));
  for (int t = 0; t < opts.sampled_coins; ++t) {
    CoinRealization c;
    c.procedure_choice = Branch::Sampling;
    c.sample_membership.resize(n);
    for (int i = 0; i < n; ++i) c.sample_membership[i] = rng.fair_coin();
    coins.push_back(std::move(c));
  }
  return coins;
}

}  // namespace

AuditVerdict truthfulness_audit(const Mechanism& mech, const Instance& inst,
                                const PrivacyModel& privacy, const DeviationGrid& grid,
                                const AuditOptions& opts) {
  inst.check();
  if (!privacy.any())
    throw Error(Error::Kind::Parameter, "audit needs at least one private field");

  AuditVerdict verdict;
  verdict.mechanism_id = mech.id;
  verdict.privacy = privacy;
  verdict.expected_truthful = mech.expected_truthful;

  std::vector<CoinRealization> coins = build_coin_set(mech, inst.n, opts, verdict.coin_space);
  std::vector<Misreport> misreports = build_misreports(privacy, grid);

  // Truthful runs, shared by every work item.
  std::vector<Outcome> truthful_outcomes;
  truthful_outcomes.reserve(coins.size());
  for (const CoinRealization& c : coins) truthful_outcomes.push_back(mech.run(inst, c));

  struct WorkItem {
    int agent;
    const Misreport* mis;
  };
  std::vector<WorkItem> items;
  for (int a = 0; a < inst.n; ++a)
    for (const Misreport& mis : misreports) items.push_back({a, &mis});

  std::vector<std::vector<Deviation>> found(items.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<long> runs{static_cast<long>(coins.size())};

  auto worker = [&]() {
    for (;;) {
      std::size_t idx = cursor.fetch_add(1);
      if (idx >= items.size()) return;
      const WorkItem& w = items[idx];
      Instance dev = apply_misreport(inst, w.agent, *w.mis);
      const AgentProfile& truth = inst.agents[w.agent];
      for (std::size_t ci = 0; ci < coins.size(); ++ci) {
        Outcome out = mech.run(dev, coins[ci]);
        runs.fetch_add(1, std::memory_order_relaxed);
        Utility u = agent_utility(truth, out.allocation[w.agent], out.payments[w.agent]);
        Utility base = agent_utility(truth, truthful_outcomes[ci].allocation[w.agent],
                                     truthful_outcomes[ci].payments[w.agent]);
        if (u > base) {
          Deviation d;
          d.agent = w.agent;
          d.budget_factor = w.mis->budget_factor;
          d.value_factor = w.mis->value_factor;
          d.tau_factor = w.mis->tau_factor;
          d.coins = coins[ci];
          d.truthful_utility = base;
          d.deviant_utility = u;
          found[idx].push_back(std::move(d));
        }
      }
    }
  };

  unsigned n_threads = opts.threads > 0 ? opts.threads : std::thread::hardware_concurrency();
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, items.size() ? items.size() : 1);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& chunk : found)
    for (auto& d : chunk) verdict.deviations.push_back(std::move(d));
  std::sort(verdict.deviations.begin(), verdict.deviations.end(),
            [](const Deviation& a, const Deviation& b) {
              if (a.agent != b.agent) return a.agent < b.agent;
              if (a.tau_factor != b.tau_factor) return a.tau_factor < b.tau_factor;
              if (a.budget_factor != b.budget_factor) return a.budget_factor < b.budget_factor;
              if (a.value_factor != b.value_factor) return a.value_factor < b.value_factor;
              return a.coins.str() < b.coins.str();
            });
  verdict.runs = runs.load();
  return verdict;
}

Rat exact_expected_revenue(const Mechanism& mech, const Instance& inst, int max_n) {
  inst.check();
  if (!mech.randomized)
    return revenue(mech.run(inst, CoinRealization::indivisible(inst.n)));
  if (inst.n > max_n)
    throw Error(Error::Kind::Size,
                "exact expectation needs n <= " + std::to_string(max_n));

  Rat total(0);
  const Rat q = mech.indivisible_prob;
  if (q.sign() > 0)
    total += q * revenue(mech.run(inst, CoinRealization::indivisible(inst.n)));
  if (q < Rat(1)) {
    Rat acc(0);
    const std::uint32_t masks = 1u << inst.n;
    for (std::uint32_t mask = 0; mask < masks; ++mask)
      acc += revenue(mech.run(inst, CoinRealization::sampling(inst.n, mask)));
    total += (Rat(1) - q) * acc / Rat(static_cast<long>(masks));
  }
  return total;
}

RatioReport ratio_report(const Mechanism& mech, const Instance& inst,
                         const std::string& instance_id) {
  RatioReport r;
  r.instance_id = instance_id;
  r.mechanism_id = mech.id;
  try {
    r.revenue = exact_expected_revenue(mech, inst);
    r.opt = oracle_opt(inst, mech.oracle_id);
  } catch (const Error& e) {
    // a shape the mechanism/oracle pair cannot serve is a configuration
    // problem from the report's point of view
    if (e.kind() == Error::Kind::Dimension)
      throw Error(Error::Kind::Config,
                  mech.id + " with oracle \"" + mech.oracle_id +
                      "\" does not fit this instance: " + e.what());
    throw;
  }
  r.bound = mech.guarantee(inst);
  r.opt_zero = r.opt.is_zero();
  if (!r.opt_zero) r.ratio = r.revenue / r.opt;
  r.pass = r.opt_zero || r.revenue >= r.bound * r.opt;
  r.assumption_flags = mech.instance_flags(inst);
  return r;
}

StructuralReport structural_checks(const Instance& inst, const Rat& clip) {
  inst.check();
  if (!inst.divisible)
    throw Error(Error::Kind::Dimension, "structural checks run on divisible instances");
  if (inst.n > 10)
    throw Error(Error::Kind::Size, "structural checks enumerate 2^n subsets; need n <= 10");

  StructuralReport rep;
  rep.n = inst.n;
  rep.subsets = 1l << inst.n;

  GreedyTrace full_trace;
  Outcome full = greedy_clip(inst, clip, &full_trace);

  auto remaining_at = [&](const GreedyTrace& t, int agent, int item) -> const Rat& {
    // R_j at the end of the agent's purchase iteration; agents who buy
    // nothing are read at the end of the run (the dummy-item convention).
    int step = t.bought_step[agent];
    if (step < 0) return t.final_remaining[item];
    return t.remaining_after[step][item];
  };

  auto note = [&](std::string msg) {
    if (rep.violations.size() < 8) rep.violations.push_back(std::move(msg));
  };

  Rat sum_sampled(0);
  for (std::uint32_t mask = 0; mask < (1u << inst.n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < inst.n; ++i)
      if (mask >> i & 1) subset.push_back(i);

    GreedyTrace sub_trace;
    Outcome sub = greedy_clip(inst, subset, clip, &sub_trace);

    for (int i : subset) {
      if (Rat(2) * sub.payments[i] < full.payments[i]) {
        rep.payment_monotonicity = false;
        note("payment monotonicity: agent " + std::to_string(i) + " S=" + std::to_string(mask) +
             " p^S=" + sub.payments[i].str() + " p=" + full.payments[i].str());
      }
      for (int j = 0; j < inst.m; ++j) {
        Rat lhs = Rat::max(remaining_at(full_trace, i, j), clip);
        Rat rhs = Rat::max(remaining_at(sub_trace, i, j), clip);
        if (lhs > rhs) {
          rep.trace_inequality = false;
          note("trace inequality: agent " + std::to_string(i) + " item " + std::to_string(j) +
               " S=" + std::to_string(mask) + " " + lhs.str() + " > " + rhs.str());
        }
      }
    }
    for (int j = 0; j < inst.m; ++j) {
      if (sub_trace.item_revenue[j] > Rat(2) * full_trace.item_revenue[j]) {
        rep.revenue_monotonicity = false;
        note("revenue monotonicity: item " + std::to_string(j) + " S=" + std::to_string(mask) +
             " W^S=" + sub_trace.item_revenue[j].str() + " W=" + full_trace.item_revenue[j].str());
      }
      sum_sampled += sub_trace.item_revenue[j];
    }
  }

  rep.averaged_lhs = sum_sampled / Rat(rep.subsets);
  Rat full_total(0);
  for (const Rat& w : full_trace.item_revenue) full_total += w;
  rep.averaged_rhs = full_total / Rat(4);
  if (rep.averaged_lhs < rep.averaged_rhs) {
    rep.averaged_bound = false;
    note("averaged revenue bound: " + rep.averaged_lhs.str() + " < " + rep.averaged_rhs.str());
  }
  return rep;
}

ConcentrationReport concentration_check(const Instance& inst, long trials, std::uint64_t seed) {
  inst.check();
  if (inst.m != 1)
    throw Error(Error::Kind::Dimension, "concentration check is a single-item statement");

  ConcentrationReport rep;
  rep.n = inst.n;
  OptSolution sol = opt_single_item(inst);
  rep.opt = sol.objective;
  rep.optimal_payments = sol.outcome.payments;

  rep.precondition_met = rep.opt.sign() > 0;
  for (const Rat& p : rep.optimal_payments)
    if (Rat(36) * p >= rep.opt) rep.precondition_met = false;

  // Group equal payments; the subset-sum distribution is a product of
  // binomials over the groups, so identical-agent markets stay exact far
  // beyond the 2^n wall.
  std::vector<Rat> sorted = rep.optimal_payments;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<Rat, long>> groups;
  for (const Rat& p : sorted) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.push_back({p, 1});
  }
  double states = 1;
  for (const auto& g : groups) states *= static_cast<double>(g.second + 1);

  const Rat three(3);
  const Rat lo_rhs = rep.opt;            // 3*sum >= opt
  const Rat hi_rhs = Rat(2) * rep.opt;   // 3*sum <= 2*opt

  if (inst.n <= 20 || states <= 2e6) {
    rep.method = "exact";
    mpz_class hits(0);
    // DFS over group counts with multiplicity weight prod C(c_g, k_g).
    std::vector<std::vector<mpz_class>> binom(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      binom[g].resize(groups[g].second + 1);
      for (long k = 0; k <= groups[g].second; ++k) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), groups[g].second, k);
        binom[g][k] = b;
      }
    }
    struct Frame {
      Rat sum;
      mpz_class ways;
    };
    std::vector<Frame> layer{{Rat(0), mpz_class(1)}};
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::vector<Frame> next;
      next.reserve(layer.size() * (groups[g].second + 1));
      for (const Frame& f : layer)
        for (long k = 0; k <= groups[g].second; ++k)
          next.push_back({f.sum + Rat(k) * groups[g].first, f.ways * binom[g][k]});
      layer = std::move(next);
    }
    for (const Frame& f : layer) {
      Rat t = three * f.sum;
      if (t >= lo_rhs && t <= hi_rhs) hits += f.ways;
    }
    rep.probability = Rat::from_mpz(hits) / Rat::from_mpz(mpz_class(1) << inst.n);
  } else {
    rep.method = "monte-carlo";
    rep.trials = trials;
    SplitMix64 rng(seed);
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
      Rat sum(0);
      for (int i = 0; i < inst.n; ++i)
        if (rng.fair_coin()) sum += rep.optimal_payments[i];
      Rat v = three * sum;
      if (v >= lo_rhs && v <= hi_rhs) ++hits;
    }
    rep.probability = Rat(hits, trials == 0 ? 1 : trials);
  }
  rep.meets_three_quarters = rep.probability >= Rat(3, 4);
  return rep;
}

namespace {

ordered_json utility_json(const Utility& u) {
  if (!u) return "-inf";
  return u->str();
}

}  // namespace

std::string audit_verdict_to_json(const AuditVerdict& v) {
  ordered_json doc;
  doc["mechanism"] = v.mechanism_id;
  doc["privacy"] = {{"budget_private", v.privacy.budget_private},
                    {"values_private", v.privacy.values_private},
                    {"tau_private", v.privacy.tau_private}};
  doc["expected_truthful"] = v.expected_truthful;
  doc["coin_space"] = v.coin_space;
  doc["runs"] = v.runs;
  doc["deviations"] = ordered_json::array();
  for (const Deviation& d : v.deviations) {
    ordered_json jd;
    jd["agent"] = d.agent;
    jd["budget_factor"] = d.budget_factor.str();
    jd["value_factor"] = d.value_factor.str();
    jd["tau_factor"] = d.tau_factor.str();
    jd["coins"] = d.coins.str();
    jd["truthful_utility"] = utility_json(d.truthful_utility);
    jd["deviant_utility"] = utility_json(d.deviant_utility);
    doc["deviations"].push_back(std::move(jd));
  }
  doc["pass"] = v.passed();
  doc["note"] = "grid search: found deviations are real counterexamples; "
                "an empty list is evidence, not proof";
  return doc.dump(2) + "\n";
}

std::string ratio_report_to_json(const RatioReport& r) {
  ordered_json doc;
  doc["instance"] = r.instance_id;
  doc["mechanism"] = r.mechanism_id;
  doc["revenue"] = r.revenue.str();
  doc["opt"] = r.opt.str();
  doc["ratio"] = r.opt_zero ? std::string("opt=0") : r.ratio.str();
  doc["bound"] = r.bound.str();
  doc["pass"] = r.pass;
  doc["assumption_flags"] = r.assumption_flags;
  return doc.dump(2) + "\n";
}

std::string structural_report_to_json(const StructuralReport& r) {
  ordered_json doc;
  doc["n"] = r.n;
  doc["subsets"] = r.subsets;
  doc["payment_monotonicity"] = r.payment_monotonicity;
  doc["revenue_monotonicity"] = r.revenue_monotonicity;
  doc["trace_inequality"] = r.trace_inequality;
  doc["averaged_bound"] = r.averaged_bound;
  doc["averaged_lhs"] = r.averaged_lhs.str();
  doc["averaged_rhs"] = r.averaged_rhs.str();
  doc["violations"] = r.violations;
  doc["pass"] = r.pass();
  return doc.dump(2) + "\n";
}

std::string concentration_report_to_json(const ConcentrationReport& r) {
  ordered_json doc;
  doc["n"] = r.n;
  doc["opt"] = r.opt.str();
  doc["precondition_met"] = r.precondition_met;
  doc["method"] = r.method;
  doc["probability"] = r.probability.str();
  doc["meets_three_quarters"] = r.meets_three_quarters;
  if (r.method == "monte-carlo") doc["trials"] = r.trials;
  return doc.dump(2) + "\n";
}

}  // namespace rosa
