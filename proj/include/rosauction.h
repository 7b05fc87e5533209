/* rosauction: truthful auctions for budget- and RoS-constrained value
 * maximizers, exposed as a C shared-library API.
 *
 * Conventions:
 *  - All numbers cross the boundary as exact-rational strings "p/q" (or "p").
 *  - Handles are opaque; free them with the matching *_free function.
 *  - Every fallible call returns a rosa_status; ROSA_OK is 0. On failure,
 *    rosa_last_error() returns a thread-local message describing it.
 *  - Strings returned through char** are heap-allocated; release them with
 *    rosa_string_free.
 */
#ifndef ROSAUCTION_H
#define ROSAUCTION_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rosa_status {
  ROSA_OK = 0,
  ROSA_ERROR_PARSE = 1,      /* malformed JSON / rational / coin spec */
  ROSA_ERROR_DIMENSION = 2,  /* instance shape does not fit the operation */
  ROSA_ERROR_PARAMETER = 3,  /* bad numeric parameter */
  ROSA_ERROR_SIZE = 4,       /* enumeration guard exceeded */
  ROSA_ERROR_CONFIG = 5,     /* unknown mechanism/oracle, missing option */
  ROSA_ERROR_IO = 6,         /* file system failure */
  ROSA_ERROR_INTERNAL = 7
} rosa_status;

typedef struct rosa_instance rosa_instance;
typedef struct rosa_outcome rosa_outcome;

const char* rosa_version(void);
const char* rosa_status_name(rosa_status status);
/* Thread-local message for the most recent failure on this thread. */
const char* rosa_last_error(void);

void rosa_string_free(char* s);

/* ---- instances ------------------------------------------------------- */

/* Instance JSON schema:
 * {"n": int, "m": int, "divisible": bool,
 *  "agents": [{"budget": "p/q", "values": ["p/q", ...], "tau": "p/q"}, ...]}
 * Rationals are "p/q" strings or integers; decimals are rejected. */
rosa_status rosa_instance_parse(const char* json_text, rosa_instance** out);
rosa_status rosa_instance_load(const char* path, rosa_instance** out);
rosa_status rosa_instance_to_json(const rosa_instance* inst, char** json_out);
int rosa_instance_agent_count(const rosa_instance* inst);
int rosa_instance_item_count(const rosa_instance* inst);
int rosa_instance_divisible(const rosa_instance* inst);
void rosa_instance_free(rosa_instance* inst);

/* Generator spec JSON:
 * {"kind": "uniform"|"large-market"|"heavy-hitter"|"symmetric",
 *  "n": int, "m": int, "seed": int, "divisible": bool,
 *  "value_range": ["p/q","p/q"], "budget_range": [...], "tau_range": [...],
 *  "large_market_c": "p/q"}
 * Deterministic per spec+seed; identical input yields byte-identical JSON. */
rosa_status rosa_generate(const char* spec_json, char** instance_json_out);

/* ---- mechanisms ------------------------------------------------------- */

/* Mechanism ids: single-fp, single-alg1, single-alg6, ud-alg2, ud-alg3,
 * ud-alg4, ud-alg5, add-alg7, add-lx, add-large-market.
 *
 * options_json (NULL or "{}" for defaults):
 * {"epsilon": "p/q",          required by single-alg6 and add-alg7
 *  "clip": "p/q",             supply-clipping bar, default "1/2"
 *  "buyer": "value"|"ql",     add-lx buyer behavior, default "value"
 *  "large_market_c": "p/q",   default "64"
 *  "coins": "indivisible"|"sampling:S=1,3",  explicit coin realization
 *  "seed": int}               coins drawn from seed when not explicit
 */
rosa_status rosa_run(const rosa_instance* inst, const char* mechanism,
                     const char* options_json, rosa_outcome** out);
rosa_status rosa_outcome_to_json(const rosa_outcome* out, char** json_out);
rosa_status rosa_outcome_revenue(const rosa_outcome* out, char** rational_out);
void rosa_outcome_free(rosa_outcome* out);

/* Feasibility verdict: JSON list, empty when the outcome is feasible. */
rosa_status rosa_validate(const rosa_instance* inst, const rosa_outcome* out,
                          char** violations_json_out);

/* Exact expected revenue over the mechanism's coin distribution (n <= 12 for
 * randomized mechanisms). */
rosa_status rosa_expected_revenue(const rosa_instance* inst, const char* mechanism,
                                  const char* options_json, char** rational_out);

/* Oracle ids: single, matching, unit-demand, additive. */
rosa_status rosa_opt(const rosa_instance* inst, const char* oracle, char** rational_out);

/* One CSV-row worth of comparison: revenue, opt, ratio, bound, pass. */
rosa_status rosa_ratio_report(const rosa_instance* inst, const char* mechanism,
                              const char* options_json, char** report_json_out);

/* Coupled-randomness truthfulness audit. Extra options:
 * {"joint": bool, "factors": ["p/q", ...], "max_coin_enum_n": int,
 *  "sampled_coins": int, "allow_sampled_coins": bool, "threads": int} */
rosa_status rosa_audit(const rosa_instance* inst, const char* mechanism,
                       const char* options_json, char** verdict_json_out);

/* Greedy-clip structural lemmas over all 2^n subsets (n <= 10).
 * options: {"clip": "p/q"} */
rosa_status rosa_check_lemmas(const rosa_instance* inst, const char* options_json,
                              char** report_json_out);

/* Sampling concentration bound on a single-item instance.
 * options: {"trials": int, "seed": int} */
rosa_status rosa_concentration(const rosa_instance* inst, const char* options_json,
                               char** report_json_out);

/* Registry metadata for one mechanism:
 * {"id", "randomized", "indivisible_prob", "expected_truthful",
 *  "is_mechanism", "privacy": {...}, "oracle"}.
 * is_mechanism = false marks bare allocators (ud-alg3) that carry no
 * incentive claim and are skipped by report-level audits. */
rosa_status rosa_mechanism_info(const char* mechanism, const char* options_json,
                                char** json_out);

/* NULL-terminated static id lists; do not free. */
const char* const* rosa_mechanism_ids(void);
const char* const* rosa_oracle_ids(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ROSAUCTION_H */
