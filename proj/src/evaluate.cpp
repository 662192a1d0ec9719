#include "causalineq/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace causalineq {

namespace {

// Reads one factor value straight from a table whose free set matches.
double table_term_value(const TableSet& tables, VarSet free,
                        const std::vector<int>& assignment) {
  if (free == 0) return 1.0;
  const DistributionTable* t = tables.find_free(free);
  if (!t) {
    throw InputError("no table with free set {" +
                     set_names(tables.graph(), free) + "}");
  }
  return t->at(assignment);
}

}  // namespace

ConstraintEvalRecord evaluate_equality(const OrderedGraph& og,
                                       const TableSet& tables,
                                       const EqualityConstraint& eq,
                                       const EvalOptions& opts) {
  ConstraintEvalRecord rec;
  rec.id = eq.id;
  rec.kind = "equality";

  EvalContext ctx(og, tables);
  const CausalGraph& g = og.g();
  std::vector<int> asg(g.observed_count(), 0);
  bool used_cleared = false;
  rec.worst_assignment = asg;

  for_each_assignment(ctx.sizes, g.all_observed(), asg, [&] {
    double residual;
    auto left = eval_cleared(eq.lhs, ctx, asg);
    std::optional<std::pair<double, double>> right;
    if (left) right = eval_cleared(eq.rhs, ctx, asg);
    if (left && right) {
      // Cross-multiplied comparison: zero-probability contexts turn both
      // products into zero instead of forcing a 0/0 call.
      used_cleared = true;
      residual =
          std::abs(left->first * right->second - right->first * left->second);
      if (left->second == 0.0 || right->second == 0.0) {
        rec.degenerate_support = true;
      }
    } else {
      ctx.zero_denominator = false;
      double l = eval_expr(eq.lhs, ctx, asg);
      double r = eval_expr(eq.rhs, ctx, asg);
      if (ctx.zero_denominator) {
        // No division-free form and an empty context: nothing to compare.
        rec.degenerate_support = true;
        return;
      }
      residual = std::abs(l - r);
    }
    if (residual > rec.worst) {
      rec.worst = residual;
      rec.worst_assignment = asg;
    }
  });

  rec.evaluated = true;
  rec.satisfied = rec.worst <= opts.tolerance;
  rec.detail = used_cleared ? "cross-multiplied" : "direct";
  return rec;
}

ConstraintEvalRecord evaluate_expansion(const OrderedGraph& og,
                                        const TableSet& tables,
                                        const ExpansionIneq& ineq,
                                        const std::vector<ExprPtr>* resolved,
                                        const EvalOptions& opts) {
  ConstraintEvalRecord rec;
  rec.id = ineq.id;
  rec.kind = "expansion";

  EvalContext ctx(og, tables);
  const CausalGraph& g = og.g();
  std::vector<int> asg(g.observed_count(), 0);
  double worst = std::numeric_limits<double>::infinity();
  rec.worst_assignment = asg;

  for_each_assignment(ctx.sizes, g.all_observed(), asg, [&] {
    ctx.zero_denominator = false;
    double slack = 0.0;
    for (std::size_t i = 0; i < ineq.terms.size(); ++i) {
      const SignedTerm& t = ineq.terms[i];
      double value;
      if (resolved) {
        value = eval_expr((*resolved)[i], ctx, asg);
      } else {
        value = table_term_value(tables, t.free, asg);
      }
      slack += t.sign * value;
    }
    if (ctx.zero_denominator) {
      // The access formulas are undefined in this context; it cannot test
      // the inequality.
      rec.degenerate_support = true;
      return;
    }
    if (slack < worst) {
      worst = slack;
      rec.worst_assignment = asg;
    }
  });

  rec.worst = std::isfinite(worst) ? worst : 0.0;
  rec.evaluated = true;
  rec.satisfied = rec.worst >= -opts.tolerance;
  rec.detail = resolved ? "resolved" : "tables";
  return rec;
}

ConstraintEvalRecord evaluate_projected(const OrderedGraph& og,
                                        const TableSet& tables,
                                        const ProjectedIneq& ineq,
                                        const EvalOptions& opts) {
  ConstraintEvalRecord rec;
  rec.id = ineq.id;
  rec.kind = "projected";

  EvalContext ctx(og, tables);
  const CausalGraph& g = og.g();
  const VarSet all = g.all_observed();
  std::vector<int> asg(g.observed_count(), 0);
  rec.worst_assignment = asg;
  double worst = std::numeric_limits<double>::infinity();

  auto available_side = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < ineq.available.size(); ++i) {
      s += ineq.available[i].sign *
           eval_expr(ineq.available_resolved[i], ctx, asg);
    }
    return s;
  };

  // Summed form: per remaining context, the minimized available side summed
  // over the unknown factors' free variables stays above the integer bound.
  // Contexts where any formula evaluation hit an empty observational context
  // are flagged and skipped; the formulas do not represent the factors there.
  VarSet outer = all & ~(ineq.sum_vars | ineq.min_vars);
  for_each_assignment(ctx.sizes, outer, asg, [&] {
    ctx.zero_denominator = false;
    double total = 0.0;
    for_each_assignment(ctx.sizes, ineq.sum_vars, asg, [&] {
      double best = 0.0;
      bool first = true;
      for_each_assignment(ctx.sizes, ineq.min_vars, asg, [&] {
        double s = available_side();
        if (first || s < best) best = s;
        first = false;
      });
      total += best;
    });
    if (ctx.zero_denominator) {
      rec.degenerate_support = true;
      return;
    }
    double slack = total - ineq.rhs;
    if (slack < worst) {
      worst = slack;
      rec.worst_assignment = asg;
    }
  });
  rec.detail = "summed";

  // Pointwise form, when the unknown factors' tables happen to be on hand.
  bool pointwise = true;
  for (const SignedTerm& t : ineq.unavailable) {
    if (!tables.find_free(t.free)) pointwise = false;
  }
  if (pointwise) {
    std::fill(asg.begin(), asg.end(), 0);
    for_each_assignment(ctx.sizes, all, asg, [&] {
      ctx.zero_denominator = false;
      double slack = available_side();
      for (const SignedTerm& t : ineq.unavailable) {
        slack += t.sign * table_term_value(tables, t.free, asg);
      }
      if (ctx.zero_denominator) {
        rec.degenerate_support = true;
        return;
      }
      if (slack < worst) {
        worst = slack;
        rec.worst_assignment = asg;
      }
    });
    rec.detail = "summed+pointwise";
  }

  rec.worst = std::isfinite(worst) ? worst : 0.0;
  rec.evaluated = true;
  rec.satisfied = rec.worst >= -opts.tolerance;
  return rec;
}

EvalReport evaluate_constraints(const OrderedGraph& og, const TableSet& tables,
                                const std::vector<EqualityConstraint>& eqs,
                                const FindIneqsResult* found,
                                const EvalOptions& opts) {
  EvalReport report;
  report.tolerance = opts.tolerance;

  auto absorb = [&](ConstraintEvalRecord rec) {
    if (rec.evaluated && !rec.satisfied) report.violations += 1;
    if (!rec.evaluated) report.skipped += 1;
    report.records.push_back(std::move(rec));
  };
  auto skipped = [&](const std::string& id, const std::string& kind,
                     const InputError& err) {
    ConstraintEvalRecord rec;
    rec.id = id;
    rec.kind = kind;
    rec.evaluated = false;
    rec.detail = err.what();
    return rec;
  };

  for (const auto& eq : eqs) {
    try {
      absorb(evaluate_equality(og, tables, eq, opts));
    } catch (const InputError& err) {
      absorb(skipped(eq.id, "equality", err));
    }
  }
  if (found) {
    for (const auto& k : found->kept) {
      try {
        absorb(evaluate_expansion(og, tables, k.ineq, &k.resolved, opts));
      } catch (const InputError& err) {
        absorb(skipped(k.ineq.id, "expansion", err));
      }
    }
    for (const auto& p : found->projected) {
      try {
        absorb(evaluate_projected(og, tables, p, opts));
      } catch (const InputError& err) {
        absorb(skipped(p.id, "projected", err));
      }
    }
  }
  return report;
}

}  // namespace causalineq
