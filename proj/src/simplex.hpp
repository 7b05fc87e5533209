#pragma once

#include <vector>

#include "rational.hpp"

namespace rosa {

// Exact rational simplex for max c*x s.t. A x <= b, x >= 0, with b >= 0 so
// the slack basis is feasible from the start. Bland's rule on both the
// entering and leaving choices rules out cycling; every pivot is exact, so
// the optimum is the true rational optimum.
struct LpSolution {
  Rat objective;
  std::vector<Rat> x;
};

LpSolution solve_lp_max(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                        const std::vector<Rat>& c);

}  // namespace rosa
