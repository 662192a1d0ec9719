#include "causalineq/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace causalineq {

void LinearProgram::add_row(std::vector<double> coeffs, Rel rel, double b) {
  if (static_cast<int>(coeffs.size()) != num_vars) {
    throw std::invalid_argument("constraint row width does not match num_vars");
  }
  rows.push_back(std::move(coeffs));
  rels.push_back(rel);
  rhs.push_back(b);
}

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
  int cols = 0;                         // columns excluding the rhs
  std::vector<std::vector<double>> a;   // body rows, each cols+1 wide
  std::vector<int> basis;               // basic column per row

  void pivot(int r, int c) {
    double p = a[r][c];
    for (double& v : a[r]) v /= p;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == r || std::abs(a[i][c]) < 1e-13) continue;
      double f = a[i][c];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }
};

// Minimizes the reduced-cost row `z` in place with Bland's rule; returns
// false on an unbounded direction. Columns with allowed[c] == false never
// enter.
bool run_simplex(Tableau& t, std::vector<double>& z,
                 const std::vector<bool>& allowed) {
  const int m = static_cast<int>(t.a.size());
  while (true) {
    int enter = -1;
    for (int c = 0; c < t.cols; ++c) {
      if (allowed[c] && z[c] < -kEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = 0;
    for (int r = 0; r < m; ++r) {
      if (t.a[r][enter] <= kEps) continue;
      double ratio = t.a[r][t.cols] / t.a[r][enter];
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (std::abs(ratio - best_ratio) <= 1e-12 &&
           t.basis[r] < t.basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;

    t.pivot(leave, enter);
    double f = z[enter];
    if (std::abs(f) > 1e-13) {
      for (int j = 0; j <= t.cols; ++j) z[j] -= f * t.a[leave][j];
    }
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());

  // Normalize to nonnegative right-hand sides.
  std::vector<std::vector<double>> rows = lp.rows;
  std::vector<LinearProgram::Rel> rels = lp.rels;
  std::vector<double> rhs = lp.rhs;
  for (int i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      for (double& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (rels[i] == LinearProgram::Rel::le) {
        rels[i] = LinearProgram::Rel::ge;
      } else if (rels[i] == LinearProgram::Rel::ge) {
        rels[i] = LinearProgram::Rel::le;
      }
    }
  }

  // Column layout: structural, slack/surplus, artificial.
  int slack_count = 0;
  for (auto rel : rels) {
    if (rel != LinearProgram::Rel::eq) ++slack_count;
  }
  int art_count = 0;
  for (auto rel : rels) {
    if (rel != LinearProgram::Rel::le) ++art_count;
  }
  const int cols = n + slack_count + art_count;

  Tableau t;
  t.cols = cols;
  t.a.assign(m, std::vector<double>(cols + 1, 0.0));
  t.basis.assign(m, -1);

  int next_slack = n;
  int next_art = n + slack_count;
  std::vector<bool> artificial(cols, false);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = rows[i][j];
    t.a[i][cols] = rhs[i];
    switch (rels[i]) {
      case LinearProgram::Rel::le:
        t.a[i][next_slack] = 1.0;
        t.basis[i] = next_slack++;
        break;
      case LinearProgram::Rel::ge:
        t.a[i][next_slack] = -1.0;
        ++next_slack;
        t.a[i][next_art] = 1.0;
        artificial[next_art] = true;
        t.basis[i] = next_art++;
        break;
      case LinearProgram::Rel::eq:
        t.a[i][next_art] = 1.0;
        artificial[next_art] = true;
        t.basis[i] = next_art++;
        break;
    }
  }

  LpSolution sol;

  // Phase one: drive the artificial variables to zero.
  if (art_count > 0) {
    std::vector<double> z(cols + 1, 0.0);
    for (int c = 0; c < cols; ++c) {
      if (artificial[c]) z[c] = 1.0;
    }
    std::vector<bool> all(cols, true);
    for (int i = 0; i < m; ++i) {
      if (artificial[t.basis[i]]) {
        for (int j = 0; j <= cols; ++j) z[j] -= t.a[i][j];
      }
    }
    if (!run_simplex(t, z, all)) {
      // Phase one is bounded below by zero; a descent ray cannot happen.
      sol.status = LpSolution::Status::infeasible;
      return sol;
    }
    if (-z[cols] > 1e-7) {
      sol.status = LpSolution::Status::infeasible;
      return sol;
    }
    // Kick any leftover artificial out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (!artificial[t.basis[i]]) continue;
      for (int c = 0; c < cols; ++c) {
        if (!artificial[c] && std::abs(t.a[i][c]) > kEps) {
          t.pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase two: the real objective, artificials barred.
  std::vector<double> z(cols + 1, 0.0);
  for (int j = 0; j < n; ++j) z[j] = lp.objective[j];
  for (int i = 0; i < m; ++i) {
    double cb = t.basis[i] < n ? lp.objective[t.basis[i]] : 0.0;
    if (std::abs(cb) > 1e-13) {
      for (int j = 0; j <= cols; ++j) z[j] -= cb * t.a[i][j];
    }
  }
  std::vector<bool> allowed(cols, true);
  for (int c = 0; c < cols; ++c) {
    if (artificial[c]) allowed[c] = false;
  }
  if (!run_simplex(t, z, allowed)) {
    sol.status = LpSolution::Status::unbounded;
    return sol;
  }

  sol.status = LpSolution::Status::optimal;
  sol.value = -z[cols];
  sol.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) sol.x[t.basis[i]] = t.a[i][cols];
  }
  return sol;
}

}  // namespace causalineq
