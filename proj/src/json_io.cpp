#include "json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rosa {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Rat rat_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw Error(Error::Kind::Parse, where + ": rationals must be \"p/q\" strings or integers");
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Error::Kind::Parse, std::string("instance JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Error::Kind::Parse, "instance JSON: expected an object");
  try {
    Instance inst;
    inst.n = doc.at("n").get<int>();
    inst.m = doc.at("m").get<int>();
    inst.divisible = doc.at("divisible").get<bool>();
    const json& agents = doc.at("agents");
    if (!agents.is_array()) throw Error(Error::Kind::Parse, "\"agents\" must be an array");
    int idx = 0;
    for (const json& a : agents) {
      AgentProfile p;
      std::string where = "agent " + std::to_string(idx);
      p.budget = rat_from_json(a.at("budget"), where + " budget");
      p.tau = rat_from_json(a.at("tau"), where + " tau");
      for (const json& v : a.at("values")) p.values.push_back(rat_from_json(v, where + " value"));
      inst.agents.push_back(std::move(p));
      ++idx;
    }
    inst.check();
    return inst;
  } catch (const json::exception& e) {
    throw Error(Error::Kind::Parse, std::string("instance JSON: ") + e.what());
  }
}

std::string instance_to_json(const Instance& inst) {
  ordered_json doc;
  doc["n"] = inst.n;
  doc["m"] = inst.m;
  doc["divisible"] = inst.divisible;
  doc["agents"] = ordered_json::array();
  for (const AgentProfile& a : inst.agents) {
    ordered_json ja;
    ja["budget"] = a.budget.str();
    ja["values"] = ordered_json::array();
    for (const Rat& v : a.values) ja["values"].push_back(v.str());
    ja["tau"] = a.tau.str();
    doc["agents"].push_back(std::move(ja));
  }
  return doc.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Io, "cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Kind::Io, "cannot write instance file: " + path);
  out << instance_to_json(inst);
}

std::string outcome_to_json(const Outcome& out) {
  ordered_json doc;
  doc["allocation"] = ordered_json::array();
  for (const auto& row : out.allocation) {
    ordered_json jr = ordered_json::array();
    for (const Rat& x : row) jr.push_back(x.str());
    doc["allocation"].push_back(std::move(jr));
  }
  doc["payments"] = ordered_json::array();
  for (const Rat& p : out.payments) doc["payments"].push_back(p.str());
  doc["revenue"] = revenue(out).str();
  return doc.dump(2) + "\n";
}

std::string coins_to_string(const CoinRealization& coins) { return coins.str(); }

CoinRealization coins_from_string(const std::string& text, int n) {
  if (text == "indivisible") return CoinRealization::indivisible(n);
  const std::string prefix = "sampling:S=";
  if (text.rfind(prefix, 0) != 0)
    throw Error(Error::Kind::Parse,
                "bad coin spec \"" + text + "\" (want \"indivisible\" or \"sampling:S=1,3\")");
  CoinRealization c;
  c.procedure_choice = Branch::Sampling;
  c.sample_membership.assign(n, false);
  std::string rest = text.substr(prefix.size());
  if (rest.empty()) return c;
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    int idx;
    try {
      idx = std::stoi(tok);
    } catch (...) {
      throw Error(Error::Kind::Parse, "bad coin spec index \"" + tok + "\"");
    }
    if (idx < 1 || idx > n)
      throw Error(Error::Kind::Parse, "coin spec index " + tok + " out of range 1.." + std::to_string(n));
    c.sample_membership[idx - 1] = true;
  }
  return c;
}

}  // namespace rosa
