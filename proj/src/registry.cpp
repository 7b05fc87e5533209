#include "registry.hpp"

#include "oracle.hpp"
#include "single.hpp"
#include "unitdemand.hpp"

namespace rosa {

namespace {

Rat require_epsilon(const MechanismOptions& opts, const std::string& id) {
  if (!opts.epsilon) throw Error(Error::Kind::Config, id + " requires --epsilon");
  if (opts.epsilon->sign() <= 0)
    throw Error(Error::Kind::Config, id + ": epsilon must be positive");
  return *opts.epsilon;
}

std::string no_flags(const Instance&) { return ""; }

}  // namespace

Mechanism make_mechanism(const std::string& id, const MechanismOptions& opts) {
  Mechanism m;
  m.id = id;
  m.instance_flags = no_flags;

  if (id == "single-fp") {
    m.oracle_id = "matching";
    m.run = [](const Instance& inst, const CoinRealization&) {
      return first_price_indivisible(inst);
    };
    m.guarantee = [](const Instance&) { return Rat(1); };
  } else if (id == "single-alg1") {
    m.randomized = true;
    m.indivisible_prob = Rat(9, 13);
    m.oracle_id = "single";
    m.run = [](const Instance& inst, const CoinRealization& coins) {
      return single_fully_private(inst, coins);
    };
    m.guarantee = [](const Instance&) { return Rat(1, 52); };
  } else if (id == "single-alg6") {
    Rat eps = require_epsilon(opts, id);
    m.oracle_id = "single";
    m.privacy = {false, true, true};  // budgets are public
    m.run = [eps](const Instance& inst, const CoinRealization&) {
      return single_public_budget(inst, eps);
    };
    m.guarantee = [eps](const Instance&) {
      return Rat(1) / ((Rat(1) + eps) * (Rat(2) + eps));
    };
    m.instance_flags = [eps](const Instance&) { return "epsilon=" + eps.str(); };
  } else if (id == "ud-alg2") {
    m.oracle_id = "matching";
    m.run = [](const Instance& inst, const CoinRealization&) {
      return greedy_matching_indivisible(inst);
    };
    m.guarantee = [](const Instance&) { return Rat(1, 2); };
  } else if (id == "ud-alg3") {
    Rat clip = opts.clip;
    m.oracle_id = "unit-demand";
    m.is_mechanism = false;       // allocator: runs on true inputs only
    m.expected_truthful = false;  // and makes no incentive claim
    m.run = [clip](const Instance& inst, const CoinRealization&) {
      return greedy_clip(inst, clip);
    };
    // Ratio from the clipping analysis: 1/(2/c + 1/(1-c)) = c(1-c)/(2-c);
    // equals 1/6 at the default c = 1/2.
    m.guarantee = [clip](const Instance&) {
      return clip * (Rat(1) - clip) / (Rat(2) - clip);
    };
    m.instance_flags = [clip](const Instance&) {
      return "allocator;clip=" + clip.str();
    };
  } else if (id == "ud-alg4") {
    Rat clip = opts.clip;
    m.randomized = true;
    m.indivisible_prob = Rat(45, 47);
    m.oracle_id = "unit-demand";
    m.expected_truthful = false;
    m.run = [clip](const Instance& inst, const CoinRealization& coins) {
      return unit_demand_aux(inst, coins, clip);
    };
    m.guarantee = [](const Instance&) { return Rat(1, 27072); };
    m.instance_flags = [](const Instance&) { return "non_truthful_comparator"; };
  } else if (id == "ud-alg5") {
    Rat clip = opts.clip;
    m.randomized = true;
    m.indivisible_prob = Rat(45, 53);
    m.oracle_id = "unit-demand";
    m.run = [clip](const Instance& inst, const CoinRealization& coins) {
      return unit_demand_final(inst, coins, clip);
    };
    m.guarantee = [](const Instance&) { return Rat(1, 30528); };
  } else if (id == "add-alg7") {
    Rat eps = require_epsilon(opts, id);
    m.oracle_id = "additive";
    m.privacy = {false, false, true};  // only tau is private
    m.run = [eps](const Instance& inst, const CoinRealization&) {
      return additive_partial(inst, eps).outcome;
    };
    m.guarantee = [eps](const Instance& inst) {
      Rat level = Rat::min(Rat(1, 2), Rat(1) / (Rat(1) + eps));
      Rat chain = level / (Rat(2) * (Rat(1) + eps) * (Rat(2) + eps));
      return chain / Rat(2 * ceil_sqrt(inst.n) + 3);
    };
    m.instance_flags = [eps](const Instance&) { return "epsilon=" + eps.str(); };
  } else if (id == "add-lx") {
    BuyerKind buyer = opts.buyer;
    m.randomized = true;
    m.indivisible_prob = Rat(0);
    m.oracle_id = "additive";
    m.run = [buyer](const Instance& inst, const CoinRealization& coins) {
      return lx_random_sampling(inst, coins, buyer);
    };
    m.guarantee = [](const Instance&) { return Rat(0); };  // conditional only
    m.instance_flags = [buyer](const Instance&) {
      return buyer == BuyerKind::ValueMaximizer ? "buyer=value" : "buyer=ql";
    };
  } else if (id == "add-large-market") {
    Rat c = opts.market_constant;
    m.randomized = true;
    m.indivisible_prob = Rat(0);
    m.oracle_id = "additive";
    m.run = [c](const Instance& inst, const CoinRealization& coins) {
      return additive_large_market(inst, coins, c).outcome;
    };
    m.guarantee = [](const Instance&) { return Rat(0); };  // conditional only
    m.instance_flags = [c](const Instance& inst) {
      Rat opt = opt_additive(inst).objective;
      Rat cap = opt / (Rat(inst.m) * c);
      bool holds = true;
      for (const AgentProfile& a : inst.agents)
        if (a.budget > cap) holds = false;
      return std::string("large_market_assumption=") + (holds ? "true" : "false") +
             ";c=" + c.str();
    };
  } else {
    throw Error(Error::Kind::Config, "unknown mechanism: " + id);
  }
  return m;
}

const std::vector<std::string>& mechanism_ids() {
  static const std::vector<std::string> ids = {
      "single-fp", "single-alg1", "single-alg6", "ud-alg2",  "ud-alg3",
      "ud-alg4",   "ud-alg5",     "add-alg7",    "add-lx",   "add-large-market"};
  return ids;
}

Rat oracle_opt(const Instance& inst, const std::string& oracle_id) {
  if (oracle_id == "single") return opt_single_item(inst).objective;
  if (oracle_id == "matching") return opt_matching_indivisible(inst).objective;
  if (oracle_id == "unit-demand") return opt_unit_demand(inst).objective;
  if (oracle_id == "additive") return opt_additive(inst).objective;
  throw Error(Error::Kind::Config, "unknown oracle: " + oracle_id);
}

const std::vector<std::string>& oracle_ids() {
  static const std::vector<std::string> ids = {"single", "matching", "unit-demand", "additive"};
  return ids;
}

}  // namespace rosa
