#include "simplex.hpp"

#include "error.hpp"

namespace rosa {

LpSolution solve_lp_max(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b,
                        const std::vector<Rat>& c) {
  const int rows = static_cast<int>(a.size());
  const int vars = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != rows)
    throw Error(Error::Kind::Dimension, "lp: |b| != row count");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != vars)
      throw Error(Error::Kind::Dimension, "lp: ragged constraint matrix");
  for (const Rat& bi : b)
    if (bi.sign() < 0)
      throw Error(Error::Kind::Parameter, "lp: negative rhs, slack basis infeasible");

  // Tableau: rows x (vars + slacks + rhs), objective row last (reduced costs
  // negated so optimality = no negative entry).
  const int cols = vars + rows + 1;
  std::vector<std::vector<Rat>> t(rows + 1, std::vector<Rat>(cols, Rat(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < vars; ++j) t[i][j] = a[i][j];
    t[i][vars + i] = Rat(1);
    t[i][cols - 1] = b[i];
  }
  for (int j = 0; j < vars; ++j) t[rows][j] = -c[j];

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = vars + i;

  for (;;) {
    // Entering: lowest-index column with a negative objective entry (Bland).
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j) {
      if (t[rows][j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal

    // Leaving: min ratio, ties by lowest basis variable index (Bland).
    int leave = -1;
    Rat best_ratio(0);
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      throw Error(Error::Kind::Parameter, "lp: unbounded objective");

    // Pivot on (leave, enter).
    Rat piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i <= rows; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      Rat f = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.x.assign(vars, Rat(0));
  for (int i = 0; i < rows; ++i)
    if (basis[i] < vars) sol.x[basis[i]] = t[i][cols - 1];
  sol.objective = t[rows][cols - 1];
  return sol;
}

}  // namespace rosa
