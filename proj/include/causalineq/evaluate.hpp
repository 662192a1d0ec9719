#pragma once

#include <string>
#include <vector>

#include "causalineq/equality.hpp"
#include "causalineq/expr.hpp"
#include "causalineq/inequality.hpp"
#include "causalineq/table.hpp"

namespace causalineq {

struct EvalOptions {
  double tolerance = 1e-9;
};

struct ConstraintEvalRecord {
  std::string id;
  std::string kind;  // "equality", "expansion" or "projected"
  bool evaluated = false;
  bool satisfied = true;
  // A conditional or ratio hit an empty context somewhere; those assignments
  // carry no information and are not counted against equalities.
  bool degenerate_support = false;
  // Equalities: largest residual |lhs - rhs|. Inequalities: smallest slack,
  // negative when violated.
  double worst = 0;
  std::vector<int> worst_assignment;
  std::string detail;
};

struct EvalReport {
  double tolerance = 1e-9;
  std::vector<ConstraintEvalRecord> records;
  int violations = 0;
  int skipped = 0;
  bool all_satisfied() const { return violations == 0; }
};

// Checks lhs == rhs over every full assignment. Uses division-free
// cross-multiplied residuals when both sides support them, so zero-probability
// contexts compare as vacuously equal; otherwise assignments that tripped a
// zero denominator are skipped and only flagged. Throws InputError when a
// needed table is missing.
ConstraintEvalRecord evaluate_equality(const OrderedGraph& og,
                                       const TableSet& tables,
                                       const EqualityConstraint& eq,
                                       const EvalOptions& opts = {});

// Signed-sum slack of an expansion inequality at every assignment. With
// `resolved` (aligned access formulas) the terms are computed from the
// available tables; without it each term is read from a table with exactly
// its free set.
ConstraintEvalRecord evaluate_expansion(const OrderedGraph& og,
                                        const TableSet& tables,
                                        const ExpansionIneq& ineq,
                                        const std::vector<ExprPtr>* resolved,
                                        const EvalOptions& opts = {});

// Summed form always: for each context, the sum over sum_vars of the
// minimized available side must reach rhs. When tables for the unavailable
// factors are also present (oracle checks), the pointwise form is evaluated
// too.
ConstraintEvalRecord evaluate_projected(const OrderedGraph& og,
                                        const TableSet& tables,
                                        const ProjectedIneq& ineq,
                                        const EvalOptions& opts = {});

// Evaluates everything it can, converting missing-table errors into skipped
// records. `found` may be null to evaluate equalities only.
EvalReport evaluate_constraints(const OrderedGraph& og, const TableSet& tables,
                                const std::vector<EqualityConstraint>& eqs,
                                const FindIneqsResult* found,
                                const EvalOptions& opts = {});

}  // namespace causalineq
