#pragma once

#include <string>

#include "model.hpp"

namespace rosa {

// Canonical instance file format, shared by the CLI, the C API and every
// test corpus:
//   {"n": 2, "m": 1, "divisible": true,
//    "agents": [{"budget": "3", "values": ["8"], "tau": "1"}, ...]}
// Rationals travel as strings "p/q" or integer strings; JSON integers are
// also accepted on input. Decimal numbers and decimal strings are rejected.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string outcome_to_json(const Outcome& out);

std::string coins_to_string(const CoinRealization& coins);
// Parses "indivisible" or "sampling:S=1,3" (1-based indices; "sampling:S="
// for the empty sample).
CoinRealization coins_from_string(const std::string& text, int n);

}  // namespace rosa
