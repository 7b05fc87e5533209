#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"
#include "registry.hpp"
#include "unitdemand.hpp"

namespace rosa {

// Multiplicative misreport factors applied to an agent's private fields.
// joint = false varies one field at a time; joint = true crosses them.
struct DeviationGrid {
  std::vector<Rat> tau_factors;
  std::vector<Rat> budget_factors;
  std::vector<Rat> value_factors;
  bool joint = false;

  static DeviationGrid defaults();
};

struct Deviation {
  int agent = 0;
  Rat budget_factor{1}, value_factor{1}, tau_factor{1};
  CoinRealization coins;
  Utility truthful_utility;
  Utility deviant_utility;  // strictly above truthful_utility, same coins
};

struct AuditVerdict {
  std::string mechanism_id;
  PrivacyModel privacy;
  bool expected_truthful = true;
  std::string coin_space;  // "deterministic" | "exhaustive" | "sampled"
  long runs = 0;           // mechanism evaluations performed
  std::vector<Deviation> deviations;

  // Truthful mechanisms pass with an empty list; the non-truthful comparator
  // passes when the search proves its own sensitivity by finding one.
  bool passed() const {
    return expected_truthful ? deviations.empty() : !deviations.empty();
  }
};

struct AuditOptions {
  int max_coin_enum_n = 12;       // full branch x 2^n enumeration up to here
  bool allow_sampled_coins = false;
  int sampled_coins = 64;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

// Coupled-randomness deviation search: every misreport is evaluated on the
// same coin realization as the truthful run, and utilities are always the
// TRUE profile's. A hit is a real counterexample; an empty list is evidence
// over the grid, not a proof.
AuditVerdict truthfulness_audit(const Mechanism& mech, const Instance& inst,
                                const PrivacyModel& privacy, const DeviationGrid& grid,
                                const AuditOptions& opts = {});

// Exact expectation over the mechanism's mixture branch and all 2^n sample
// memberships. Deterministic mechanisms return their single-run revenue.
Rat exact_expected_revenue(const Mechanism& mech, const Instance& inst, int max_n = 12);

struct RatioReport {
  std::string instance_id;
  std::string mechanism_id;
  Rat revenue;  // exact expected revenue
  Rat opt;
  Rat bound;
  bool opt_zero = false;
  Rat ratio;  // meaningful only when !opt_zero
  bool pass = false;
  std::string assumption_flags;
};

RatioReport ratio_report(const Mechanism& mech, const Instance& inst,
                         const std::string& instance_id);

struct StructuralReport {
  int n = 0;
  long subsets = 0;
  bool payment_monotonicity = true;  // p_i^S >= p_i / 2 for all S, i in S
  bool revenue_monotonicity = true;  // W_j(x^S) <= 2 W_j(x) for all S, j
  bool trace_inequality = true;      // max{R_j(i,k), c} <= max{R_j^S(i,k'), c}
  bool averaged_bound = true;        // E_S[sum_j W_j(x^S)] >= (1/4) sum_j W_j(x)
  Rat averaged_lhs;
  Rat averaged_rhs;
  std::vector<std::string> violations;  // first few, human readable

  bool pass() const {
    return payment_monotonicity && revenue_monotonicity && trace_inequality && averaged_bound;
  }
};

// Exhaustive subset verification of the greedy-clip structure lemmas
// (n <= 10). The clip parameter doubles as the constant in the trace
// inequality's max{., clip}.
StructuralReport structural_checks(const Instance& inst, const Rat& clip = Rat(1, 2));

struct ConcentrationReport {
  int n = 0;
  Rat opt;
  std::vector<Rat> optimal_payments;
  bool precondition_met = false;  // every p_i* < opt/36
  std::string method;             // "exact" | "monte-carlo"
  Rat probability;                // Pr[opt/3 <= sum_S p* <= 2 opt/3]
  bool meets_three_quarters = false;
  long trials = 0;  // Monte Carlo only
};

// Checks the sampling concentration bound on a single-item instance. Exact
// when n <= 20 or when grouping equal payments keeps the state space small
// (the only way the precondition can hold, since sum p* = opt forces
// n >= 37); Monte Carlo with the pinned generator otherwise.
ConcentrationReport concentration_check(const Instance& inst, long trials = 20000,
                                        std::uint64_t seed = 1);

// JSON emitters used by the C API and the CLI.
std::string audit_verdict_to_json(const AuditVerdict& v);
std::string ratio_report_to_json(const RatioReport& r);
std::string structural_report_to_json(const StructuralReport& r);
std::string concentration_report_to_json(const ConcentrationReport& r);

}  // namespace rosa
