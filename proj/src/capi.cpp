#include "rosauction.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "audit.hpp"
#include "generator.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "registry.hpp"

using nlohmann::json;

struct rosa_instance {
  rosa::Instance inst;
};

struct rosa_outcome {
  rosa::Outcome out;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

rosa_status status_of(const rosa::Error& e) {
  using K = rosa::Error::Kind;
  switch (e.kind()) {
    case K::Parse: return ROSA_ERROR_PARSE;
    case K::Dimension: return ROSA_ERROR_DIMENSION;
    case K::Parameter: return ROSA_ERROR_PARAMETER;
    case K::Size: return ROSA_ERROR_SIZE;
    case K::Config: return ROSA_ERROR_CONFIG;
    case K::Io: return ROSA_ERROR_IO;
  }
  return ROSA_ERROR_INTERNAL;
}

template <typename Fn>
rosa_status guarded(Fn&& fn) {
  try {
    fn();
    return ROSA_OK;
  } catch (const rosa::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ROSA_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ROSA_ERROR_INTERNAL;
  }
}

rosa::Rat opt_rat(const json& doc, const char* key, const rosa::Rat& fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (v.is_string()) return rosa::Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return rosa::Rat(v.get<long>());
  throw rosa::Error(rosa::Error::Kind::Parse,
                    std::string(key) + ": expected \"p/q\" string or integer");
}

struct ParsedOptions {
  rosa::MechanismOptions mech;
  bool has_coins = false;
  std::string coins_text;
  std::uint64_t seed = 0;
  bool has_seed = false;
  json raw;
};

ParsedOptions parse_options(const char* options_json) {
  ParsedOptions po;
  std::string text = options_json ? options_json : "{}";
  if (text.empty()) text = "{}";
  try {
    po.raw = json::parse(text);
    if (!po.raw.is_object())
      throw rosa::Error(rosa::Error::Kind::Parse, "options JSON must be an object");
    if (po.raw.contains("epsilon")) po.mech.epsilon = opt_rat(po.raw, "epsilon", rosa::Rat(1));
    po.mech.clip = opt_rat(po.raw, "clip", rosa::Rat(1, 2));
    po.mech.market_constant = opt_rat(po.raw, "large_market_c", rosa::Rat(64));
    if (po.raw.contains("buyer")) {
      std::string b = po.raw.at("buyer").get<std::string>();
      if (b == "value")
        po.mech.buyer = rosa::BuyerKind::ValueMaximizer;
      else if (b == "ql")
        po.mech.buyer = rosa::BuyerKind::QuasiLinear;
      else
        throw rosa::Error(rosa::Error::Kind::Config, "buyer must be \"value\" or \"ql\"");
    }
    if (po.raw.contains("coins")) {
      po.has_coins = true;
      po.coins_text = po.raw.at("coins").get<std::string>();
    }
    if (po.raw.contains("seed")) {
      po.has_seed = true;
      po.seed = po.raw.at("seed").get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw rosa::Error(rosa::Error::Kind::Parse, std::string("options JSON: ") + e.what());
  }
  return po;
}

rosa::CoinRealization coins_for(const rosa::Mechanism& mech, const rosa::Instance& inst,
                                const ParsedOptions& po) {
  if (po.has_coins) return rosa::coins_from_string(po.coins_text, inst.n);
  if (!mech.randomized) return rosa::CoinRealization::indivisible(inst.n);
  return rosa::draw_coins(po.has_seed ? po.seed : 0, inst.n, mech.indivisible_prob);
}

}  // namespace

extern "C" {

const char* rosa_version(void) { return "1.0.0"; }

const char* rosa_status_name(rosa_status status) {
  switch (status) {
    case ROSA_OK: return "ok";
    case ROSA_ERROR_PARSE: return "parse-error";
    case ROSA_ERROR_DIMENSION: return "dimension-error";
    case ROSA_ERROR_PARAMETER: return "parameter-error";
    case ROSA_ERROR_SIZE: return "size-error";
    case ROSA_ERROR_CONFIG: return "config-error";
    case ROSA_ERROR_IO: return "io-error";
    case ROSA_ERROR_INTERNAL: return "internal-error";
  }
  return "?";
}

const char* rosa_last_error(void) { return g_last_error.c_str(); }

void rosa_string_free(char* s) { std::free(s); }

rosa_status rosa_instance_parse(const char* json_text, rosa_instance** out) {
  return guarded([&] {
    if (!json_text || !out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    *out = new rosa_instance{rosa::instance_from_json(json_text)};
  });
}

rosa_status rosa_instance_load(const char* path, rosa_instance** out) {
  return guarded([&] {
    if (!path || !out) throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    *out = new rosa_instance{rosa::load_instance(path)};
  });
}

rosa_status rosa_instance_to_json(const rosa_instance* inst, char** json_out) {
  return guarded([&] {
    if (!inst || !json_out) throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    *json_out = dup_string(rosa::instance_to_json(inst->inst));
  });
}

int rosa_instance_agent_count(const rosa_instance* inst) { return inst ? inst->inst.n : 0; }
int rosa_instance_item_count(const rosa_instance* inst) { return inst ? inst->inst.m : 0; }
int rosa_instance_divisible(const rosa_instance* inst) {
  return inst && inst->inst.divisible ? 1 : 0;
}

void rosa_instance_free(rosa_instance* inst) { delete inst; }

rosa_status rosa_generate(const char* spec_json, char** instance_json_out) {
  return guarded([&] {
    if (!spec_json || !instance_json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    rosa::GeneratorSpec spec = rosa::GeneratorSpec::from_json(spec_json);
    *instance_json_out = dup_string(rosa::instance_to_json(rosa::generate(spec)));
  });
}

rosa_status rosa_run(const rosa_instance* inst, const char* mechanism, const char* options_json,
                     rosa_outcome** out) {
  return guarded([&] {
    if (!inst || !mechanism || !out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    rosa::Mechanism mech = rosa::make_mechanism(mechanism, po.mech);
    rosa::CoinRealization coins = coins_for(mech, inst->inst, po);
    *out = new rosa_outcome{mech.run(inst->inst, coins)};
  });
}

rosa_status rosa_outcome_to_json(const rosa_outcome* out, char** json_out) {
  return guarded([&] {
    if (!out || !json_out) throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    *json_out = dup_string(rosa::outcome_to_json(out->out));
  });
}

rosa_status rosa_outcome_revenue(const rosa_outcome* out, char** rational_out) {
  return guarded([&] {
    if (!out || !rational_out) throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    *rational_out = dup_string(rosa::revenue(out->out).str());
  });
}

void rosa_outcome_free(rosa_outcome* out) { delete out; }

rosa_status rosa_validate(const rosa_instance* inst, const rosa_outcome* out,
                          char** violations_json_out) {
  return guarded([&] {
    if (!inst || !out || !violations_json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    auto violations = rosa::validate_outcome(inst->inst, out->out);
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
      nlohmann::ordered_json jv;
      jv["kind"] = rosa::violation_kind_name(v.kind);
      jv["agent"] = v.agent;
      jv["item"] = v.item;
      jv["detail"] = v.detail;
      doc.push_back(std::move(jv));
    }
    *violations_json_out = dup_string(doc.dump(2) + "\n");
  });
}

rosa_status rosa_expected_revenue(const rosa_instance* inst, const char* mechanism,
                                  const char* options_json, char** rational_out) {
  return guarded([&] {
    if (!inst || !mechanism || !rational_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    rosa::Mechanism mech = rosa::make_mechanism(mechanism, po.mech);
    *rational_out = dup_string(rosa::exact_expected_revenue(mech, inst->inst).str());
  });
}

rosa_status rosa_opt(const rosa_instance* inst, const char* oracle, char** rational_out) {
  return guarded([&] {
    if (!inst || !oracle || !rational_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    *rational_out = dup_string(rosa::oracle_opt(inst->inst, oracle).str());
  });
}

rosa_status rosa_ratio_report(const rosa_instance* inst, const char* mechanism,
                              const char* options_json, char** report_json_out) {
  return guarded([&] {
    if (!inst || !mechanism || !report_json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    rosa::Mechanism mech = rosa::make_mechanism(mechanism, po.mech);
    std::string id = po.raw.value("instance_id", std::string("instance"));
    rosa::RatioReport rep = rosa::ratio_report(mech, inst->inst, id);
    *report_json_out = dup_string(rosa::ratio_report_to_json(rep));
  });
}

rosa_status rosa_audit(const rosa_instance* inst, const char* mechanism,
                       const char* options_json, char** verdict_json_out) {
  return guarded([&] {
    if (!inst || !mechanism || !verdict_json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    rosa::Mechanism mech = rosa::make_mechanism(mechanism, po.mech);

    rosa::DeviationGrid grid = rosa::DeviationGrid::defaults();
    rosa::AuditOptions aopts;
    try {
      if (po.raw.contains("factors")) {
        std::vector<rosa::Rat> fs;
        for (const json& f : po.raw.at("factors")) {
          if (f.is_string())
            fs.push_back(rosa::Rat::parse(f.get<std::string>()));
          else if (f.is_number_integer())
            fs.push_back(rosa::Rat(f.get<long>()));
          else
            throw rosa::Error(rosa::Error::Kind::Parse, "factors: expected rational strings");
        }
        grid.tau_factors = grid.budget_factors = grid.value_factors = fs;
      }
      grid.joint = po.raw.value("joint", false);

      aopts.max_coin_enum_n = po.raw.value("max_coin_enum_n", 12);
      aopts.allow_sampled_coins = po.raw.value("allow_sampled_coins", false);
      aopts.sampled_coins = po.raw.value("sampled_coins", 64);
      aopts.seed = po.raw.value("seed", 0ull);
      aopts.threads = po.raw.value("threads", 0);
    } catch (const json::exception& e) {
      throw rosa::Error(rosa::Error::Kind::Parse, std::string("audit options: ") + e.what());
    }

    rosa::AuditVerdict v = rosa::truthfulness_audit(mech, inst->inst, mech.privacy, grid, aopts);
    *verdict_json_out = dup_string(rosa::audit_verdict_to_json(v));
  });
}

rosa_status rosa_check_lemmas(const rosa_instance* inst, const char* options_json,
                              char** report_json_out) {
  return guarded([&] {
    if (!inst || !report_json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    rosa::StructuralReport rep = rosa::structural_checks(inst->inst, po.mech.clip);
    *report_json_out = dup_string(rosa::structural_report_to_json(rep));
  });
}

rosa_status rosa_concentration(const rosa_instance* inst, const char* options_json,
                               char** report_json_out) {
  return guarded([&] {
    if (!inst || !report_json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    long trials = 20000;
    std::uint64_t seed = 1;
    try {
      trials = po.raw.value("trials", trials);
      seed = po.raw.value("seed", seed);
    } catch (const json::exception& e) {
      throw rosa::Error(rosa::Error::Kind::Parse,
                        std::string("concentration options: ") + e.what());
    }
    rosa::ConcentrationReport rep = rosa::concentration_check(inst->inst, trials, seed);
    *report_json_out = dup_string(rosa::concentration_report_to_json(rep));
  });
}

rosa_status rosa_mechanism_info(const char* mechanism, const char* options_json,
                                char** json_out) {
  return guarded([&] {
    if (!mechanism || !json_out)
      throw rosa::Error(rosa::Error::Kind::Parameter, "null argument");
    ParsedOptions po = parse_options(options_json);
    rosa::Mechanism mech = rosa::make_mechanism(mechanism, po.mech);
    nlohmann::ordered_json doc;
    doc["id"] = mech.id;
    doc["randomized"] = mech.randomized;
    doc["indivisible_prob"] = mech.indivisible_prob.str();
    doc["expected_truthful"] = mech.expected_truthful;
    doc["is_mechanism"] = mech.is_mechanism;
    doc["privacy"] = {{"budget_private", mech.privacy.budget_private},
                      {"values_private", mech.privacy.values_private},
                      {"tau_private", mech.privacy.tau_private}};
    doc["oracle"] = mech.oracle_id;
    *json_out = dup_string(doc.dump(2) + "\n");
  });
}

const char* const* rosa_mechanism_ids(void) {
  static const char* ids[] = {"single-fp", "single-alg1", "single-alg6", "ud-alg2",
                              "ud-alg3",   "ud-alg4",     "ud-alg5",     "add-alg7",
                              "add-lx",    "add-large-market", nullptr};
  return ids;
}

const char* const* rosa_oracle_ids(void) {
  static const char* ids[] = {"single", "matching", "unit-demand", "additive", nullptr};
  return ids;
}

}  // extern "C"
