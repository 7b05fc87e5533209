#include "model.hpp"

#include <sstream>

namespace rosa {

void Instance::check() const {
  if (n < 1 || m < 1) throw Error(Error::Kind::Dimension, "instance needs n >= 1 and m >= 1");
  if (static_cast<int>(agents.size()) != n)
    throw Error(Error::Kind::Dimension, "agents.size() != n");
  for (int i = 0; i < n; ++i) {
    const AgentProfile& a = agents[i];
    if (static_cast<int>(a.values.size()) != m)
      throw Error(Error::Kind::Dimension, "agent " + std::to_string(i) + " has wrong value count");
    if (a.budget.sign() < 0)
      throw Error(Error::Kind::Parameter, "agent " + std::to_string(i) + " has negative budget");
    if (a.tau.sign() <= 0)
      throw Error(Error::Kind::Parameter, "agent " + std::to_string(i) + " needs tau > 0");
    for (const Rat& v : a.values)
      if (v.sign() < 0)
        throw Error(Error::Kind::Parameter, "agent " + std::to_string(i) + " has negative value");
  }
}

Outcome Outcome::zeros(int n, int m) {
  Outcome out;
  out.allocation.assign(n, std::vector<Rat>(m, Rat(0)));
  out.payments.assign(n, Rat(0));
  return out;
}

CoinRealization CoinRealization::indivisible(int n) {
  CoinRealization c;
  c.procedure_choice = Branch::Indivisible;
  c.sample_membership.assign(n, false);
  return c;
}

CoinRealization CoinRealization::sampling(int n, std::uint32_t membership_mask) {
  CoinRealization c;
  c.procedure_choice = Branch::Sampling;
  c.sample_membership.resize(n);
  for (int i = 0; i < n; ++i) c.sample_membership[i] = (membership_mask >> i) & 1u;
  return c;
}

std::string CoinRealization::str() const {
  if (procedure_choice == Branch::Indivisible) return "indivisible";
  std::ostringstream os;
  os << "sampling:S=";
  bool first = true;
  for (std::size_t i = 0; i < sample_membership.size(); ++i) {
    if (!sample_membership[i]) continue;
    if (!first) os << ',';
    os << (i + 1);  // 1-based agent indices on the wire
    first = false;
  }
  return os.str();
}

Rat willingness_to_pay(const Rat& budget, const std::vector<Rat>& values, const Rat& tau,
                       const std::vector<Rat>& fractions) {
  if (values.size() != fractions.size())
    throw Error(Error::Kind::Dimension, "willingness_to_pay: fraction/value length mismatch");
  Rat total(0);
  for (std::size_t j = 0; j < values.size(); ++j) total += fractions[j] * values[j];
  return Rat::min(budget, total / tau);
}

Rat willingness_to_pay(const AgentProfile& agent, const std::vector<Rat>& fractions) {
  return willingness_to_pay(agent.budget, agent.values, agent.tau, fractions);
}

Utility agent_utility(const AgentProfile& agent, const std::vector<Rat>& fractions,
                      const Rat& payment) {
  if (agent.values.size() != fractions.size())
    throw Error(Error::Kind::Dimension, "agent_utility: fraction/value length mismatch");
  Rat value(0);
  for (std::size_t j = 0; j < fractions.size(); ++j) value += fractions[j] * agent.values[j];
  if (payment > agent.budget) return std::nullopt;
  if (payment * agent.tau > value) return std::nullopt;
  return value;
}

std::vector<Violation> validate_outcome(const Instance& inst, const Outcome& out) {
  if (static_cast<int>(out.allocation.size()) != inst.n ||
      static_cast<int>(out.payments.size()) != inst.n)
    throw Error(Error::Kind::Dimension, "outcome has wrong agent count");
  for (const auto& row : out.allocation)
    if (static_cast<int>(row.size()) != inst.m)
      throw Error(Error::Kind::Dimension, "outcome has wrong item count");

  std::vector<Violation> v;
  const Rat one(1);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      const Rat& x = out.allocation[i][j];
      if (x.sign() < 0 || x > one)
        v.push_back({Violation::Kind::AllocationRange, i, j,
                     "x=" + x.str() + " outside [0,1]"});
      if (!inst.divisible && !x.is_zero() && x != one)
        v.push_back({Violation::Kind::Integrality, i, j, "fractional x=" + x.str()});
    }
    if (out.payments[i].sign() < 0)
      v.push_back({Violation::Kind::PaymentSign, i, -1, "payment " + out.payments[i].str()});
  }
  for (int j = 0; j < inst.m; ++j) {
    Rat sold(0);
    for (int i = 0; i < inst.n; ++i) sold += out.allocation[i][j];
    if (sold > one)
      v.push_back({Violation::Kind::Supply, -1, j, "sold " + sold.str() + " > 1"});
  }
  for (int i = 0; i < inst.n; ++i) {
    const AgentProfile& a = inst.agents[i];
    const Rat& p = out.payments[i];
    if (p > a.budget)
      v.push_back({Violation::Kind::Budget, i, -1,
                   "p=" + p.str() + " > B=" + a.budget.str()});
    Rat value(0);
    for (int j = 0; j < inst.m; ++j) value += out.allocation[i][j] * a.values[j];
    if (p * a.tau > value)
      v.push_back({Violation::Kind::Ros, i, -1,
                   "tau*p=" + (p * a.tau).str() + " > value=" + value.str()});
  }
  return v;
}

Rat revenue(const Outcome& out) {
  Rat total(0);
  for (const Rat& p : out.payments) total += p;
  return total;
}

const char* violation_kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Supply: return "supply";
    case Violation::Kind::Budget: return "budget";
    case Violation::Kind::Ros: return "ros";
    case Violation::Kind::Integrality: return "integrality";
    case Violation::Kind::AllocationRange: return "allocation-range";
    case Violation::Kind::PaymentSign: return "payment-sign";
  }
  return "?";
}

}  // namespace rosa
