#pragma once

#include <vector>

namespace causalineq {

// Small dense linear program: minimize objective . x over x >= 0 subject to
// the listed rows. Meant for the modest systems produced by bound extraction;
// no sparsity, no scaling.
struct LinearProgram {
  enum class Rel { le, eq, ge };

  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Rel> rels;
  std::vector<double> rhs;

  void add_row(std::vector<double> coeffs, Rel rel, double b);
};

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded };

  Status status = Status::optimal;
  double value = 0;
  std::vector<double> x;
};

// Two-phase tableau simplex with Bland's rule, so degenerate systems cannot
// cycle.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace causalineq
