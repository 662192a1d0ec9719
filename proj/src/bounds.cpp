#include "causalineq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalineq/simplex.hpp"

namespace causalineq {

namespace {

bool contains_term_node(const ExprPtr& e, VarSet free) {
  if (!e) return false;
  if (e->kind == Expr::Kind::term && e->term_free == free) return true;
  for (const auto& k : e->kids) {
    if (contains_term_node(k, free)) return true;
  }
  return false;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

void push_note(std::vector<std::string>& notes, std::string note) {
  if (std::find(notes.begin(), notes.end(), note) == notes.end()) {
    notes.push_back(std::move(note));
  }
}

struct UsableKept {
  const KeptIneq* kept = nullptr;
  std::size_t target_pos = 0;
};

// Retained inequalities with a direct target term. When some other term's
// access formula routes through the target's pretend table the inequality
// cannot be read off with the user's data and is set aside.
std::vector<UsableKept> usable_kept(const FindIneqsResult& found, VarSet target,
                                    std::vector<std::string>& notes) {
  std::vector<UsableKept> out;
  for (const auto& k : found.kept) {
    std::optional<std::size_t> target_pos;
    bool entangled = false;
    for (std::size_t i = 0; i < k.ineq.terms.size(); ++i) {
      if (k.ineq.terms[i].free == target) {
        target_pos = i;
      } else if (contains_term_node(k.resolved[i], target)) {
        entangled = true;
      }
    }
    if (!target_pos) continue;
    if (entangled) {
      push_note(notes, k.ineq.id +
                           ": another term resolves through the target's "
                           "distribution; not used");
      continue;
    }
    out.push_back({&k, *target_pos});
  }
  return out;
}

// Index into the dep-space cell vector: members ascending, last fastest,
// matching for_each_assignment's visiting order.
std::size_t cell_index(const std::vector<int>& members,
                       const std::vector<int>& sizes,
                       const std::vector<int>& asg) {
  std::size_t idx = 0;
  for (int m : members) {
    idx = idx * static_cast<std::size_t>(sizes[m]) +
          static_cast<std::size_t>(asg[m]);
  }
  return idx;
}

// Signed sum of every non-target term at the current assignment, or nullopt
// when a needed formula has no support there.
std::optional<double> other_side(const UsableKept& u, EvalContext& ctx,
                                 std::vector<int>& asg) {
  const auto& terms = u.kept->ineq.terms;
  double other = 0.0;
  ctx.zero_denominator = false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == u.target_pos) continue;
    other += terms[i].sign * eval_expr(u.kept->resolved[i], ctx, asg);
  }
  if (ctx.zero_denominator) return std::nullopt;
  return other;
}

void per_cell_bounds(const OrderedGraph& og, const TableSet& tables,
                     const FindIneqsResult& found,
                     const std::vector<UsableKept>& usable, VarSet target,
                     const BoundsOptions& opts, BoundsResult& res) {
  const CausalGraph& g = og.g();
  std::vector<int> sizes = g.domain_sizes();
  std::vector<int> asg(g.observed_count(), 0);
  EvalContext ctx(og, tables);
  bool inconsistent = false;

  for_each_assignment(sizes, g.all_observed(), asg, [&] {
    CellBound cell;
    cell.assignment = asg;
    for (const auto& u : usable) {
      std::optional<double> other = other_side(u, ctx, asg);
      if (!other) {
        push_note(res.notes,
                  u.kept->ineq.id + ": skipped assignments with degenerate support");
        continue;
      }
      if (u.kept->ineq.terms[u.target_pos].sign > 0) {
        if (-*other > cell.lower) {
          cell.lower = -*other;
          cell.lower_source = u.kept->ineq.id;
        }
      } else {
        if (*other < cell.upper) {
          cell.upper = *other;
          cell.upper_source = u.kept->ineq.id;
        }
      }
    }
    if (cell.lower > cell.upper + opts.tolerance) inconsistent = true;
    res.cells.push_back(std::move(cell));
  });
  if (inconsistent) {
    push_note(res.notes,
              "empty interval at some assignment; the data contradict the "
              "constraints");
  }

  std::string unused;
  for (const auto& p : found.projected) {
    bool mentions = false;
    for (const auto& t : p.available) {
      if (t.free == target) {
        mentions = true;
        break;
      }
    }
    if (!mentions) continue;
    if (!unused.empty()) unused += ", ";
    unused += p.id;
  }
  if (!unused.empty()) {
    push_note(res.notes,
              "projected constraints mentioning the target need the joint "
              "mode, not used here: " +
                  unused);
  }
}

void joint_lp_bounds(const OrderedGraph& og, const TableSet& tables,
                     const FindIneqsResult& found,
                     const std::vector<UsableKept>& usable, VarSet target,
                     const BoundsOptions& opts, BoundsResult& res) {
  const CausalGraph& g = og.g();
  std::vector<int> sizes = g.domain_sizes();
  std::vector<int> asg(g.observed_count(), 0);
  VarSet dep = res.target_deps;
  std::vector<int> dep_members = set_members(dep);
  std::size_t cell_count = 1;
  for (int m : dep_members) cell_count *= static_cast<std::size_t>(sizes[m]);

  LinearProgram lp;
  lp.num_vars = static_cast<int>(cell_count);
  lp.objective.assign(cell_count, 0.0);

  // The target's cells form one distribution per assignment of its external
  // parents.
  for_each_assignment(sizes, dep & ~target, asg, [&] {
    std::vector<double> row(cell_count, 0.0);
    for_each_assignment(sizes, target, asg, [&] {
      row[cell_index(dep_members, sizes, asg)] = 1.0;
    });
    lp.add_row(std::move(row), LinearProgram::Rel::eq, 1.0);
  });

  EvalContext ctx(og, tables);
  std::set<std::pair<std::vector<double>, double>> seen;
  auto add_ge_row = [&](std::vector<double> row, double rhs) {
    bool nonzero = false;
    for (double c : row) {
      if (c != 0.0) {
        nonzero = true;
        break;
      }
    }
    if (!nonzero) return;
    if (!seen.insert({row, rhs}).second) return;
    lp.add_row(std::move(row), LinearProgram::Rel::ge, rhs);
  };

  for (const auto& u : usable) {
    for_each_assignment(sizes, g.all_observed(), asg, [&] {
      std::optional<double> other = other_side(u, ctx, asg);
      if (!other) {
        push_note(res.notes,
                  u.kept->ineq.id + ": skipped assignments with degenerate support");
        return;
      }
      std::vector<double> row(cell_count, 0.0);
      row[cell_index(dep_members, sizes, asg)] =
          u.kept->ineq.terms[u.target_pos].sign;
      add_ge_row(std::move(row), -*other);
    });
  }

  // Projections whose available side carries the target: the minimum over the
  // searched variables linearizes into one row per per-context choice, each
  // implied by (and jointly equivalent to) the original bound.
  for (const auto& p : found.projected) {
    bool mentions = false;
    bool entangled = false;
    for (std::size_t i = 0; i < p.available.size(); ++i) {
      if (p.available[i].free == target) {
        mentions = true;
      } else if (contains_term_node(p.available_resolved[i], target)) {
        entangled = true;
      }
    }
    if (!mentions) continue;
    if (entangled) {
      push_note(res.notes, p.id +
                               ": another term resolves through the target's "
                               "distribution; not used");
      continue;
    }

    std::vector<int> min_members = set_members(p.min_vars);
    std::size_t min_count = 1;
    for (int m : min_members) min_count *= static_cast<std::size_t>(sizes[m]);
    std::size_t sum_count = 1;
    for (int m : set_members(p.sum_vars)) {
      sum_count *= static_cast<std::size_t>(sizes[m]);
    }
    std::size_t total = 1;
    bool over = false;
    for (std::size_t i = 0; i < sum_count && !over; ++i) {
      total *= min_count;
      if (total > opts.max_selections) over = true;
    }
    if (over) {
      push_note(res.notes,
                p.id + ": too many choice combinations to linearize; skipped");
      continue;
    }

    VarSet outer = g.all_observed() & ~(p.sum_vars | p.min_vars);
    std::vector<std::size_t> sel(sum_count, 0);
    for_each_assignment(sizes, outer, asg, [&] {
      std::fill(sel.begin(), sel.end(), 0);
      while (true) {
        std::vector<double> row(cell_count, 0.0);
        double consts = 0.0;
        bool ok = true;
        std::size_t si = 0;
        for_each_assignment(sizes, p.sum_vars, asg, [&] {
          std::size_t choice = sel[si++];
          for (std::size_t j = min_members.size(); j-- > 0;) {
            int m = min_members[j];
            asg[m] = static_cast<int>(choice %
                                      static_cast<std::size_t>(sizes[m]));
            choice /= static_cast<std::size_t>(sizes[m]);
          }
          ctx.zero_denominator = false;
          for (std::size_t i = 0; i < p.available.size(); ++i) {
            if (p.available[i].free == target) {
              row[cell_index(dep_members, sizes, asg)] += p.available[i].sign;
            } else {
              consts += p.available[i].sign *
                        eval_expr(p.available_resolved[i], ctx, asg);
            }
          }
          if (ctx.zero_denominator) ok = false;
        });
        if (ok) add_ge_row(std::move(row), p.rhs - consts);

        std::size_t k = 0;
        for (; k < sum_count; ++k) {
          if (++sel[k] < min_count) break;
          sel[k] = 0;
        }
        if (k == sum_count) break;
      }
      for (int m : min_members) asg[m] = 0;
    });
  }

  bool infeasible = false;
  std::vector<std::pair<double, double>> solved(cell_count, {0.0, 1.0});
  for (std::size_t c = 0; c < cell_count && !infeasible; ++c) {
    std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
    lp.objective[c] = 1.0;
    LpSolution lo = solve_lp(lp);
    if (lo.status == LpSolution::Status::infeasible) {
      infeasible = true;
      break;
    }
    lp.objective[c] = -1.0;
    LpSolution hi = solve_lp(lp);
    double lower = lo.status == LpSolution::Status::optimal ? lo.value : 0.0;
    double upper = hi.status == LpSolution::Status::optimal ? -hi.value : 1.0;
    solved[c] = {clamp01(lower), clamp01(upper)};
  }
  if (infeasible) {
    push_note(res.notes,
              "joint system infeasible; the data contradict the constraints");
  }

  asg.assign(asg.size(), 0);
  for_each_assignment(sizes, dep, asg, [&] {
    CellBound cell;
    cell.assignment = asg;
    if (!infeasible) {
      auto [lower, upper] = solved[cell_index(dep_members, sizes, asg)];
      cell.lower = lower;
      cell.upper = upper;
      cell.lower_source = cell.upper_source = "lp";
    } else {
      cell.lower_source = cell.upper_source = "infeasible";
    }
    res.cells.push_back(std::move(cell));
  });
}

}  // namespace

BoundsResult derive_bounds(const OrderedGraph& og,
                           const IdentifiedClosure& closure,
                           const std::vector<VarSet>& given_intervened,
                           const TableSet& tables, VarSet target_free,
                           const BoundsOptions& opts) {
  const CausalGraph& g = og.g();
  VarSet all = g.all_observed();
  if (target_free == 0 || !is_subset(target_free, all)) {
    throw InputError(
        "bounds target must be a nonempty set of observed variables");
  }

  BoundsResult res;
  res.target_free = target_free;
  res.target_deps = target_free | g.external_parents(target_free);
  std::vector<int> sizes = g.domain_sizes();
  std::vector<int> asg(g.observed_count(), 0);

  AvailabilityContext base(og, closure, given_intervened);
  if (base.available(target_free)) {
    res.point_identified = true;
    res.identified_formula = base.resolve(target_free);
    EvalContext ctx(og, tables);
    for_each_assignment(sizes, all, asg, [&] {
      CellBound cell;
      cell.assignment = asg;
      ctx.zero_denominator = false;
      double v = clamp01(eval_expr(res.identified_formula, ctx, asg));
      cell.lower = cell.upper = v;
      cell.lower_source = cell.upper_source = "identified";
      res.cells.push_back(std::move(cell));
    });
    return res;
  }

  // Rerun the search as if the target's distribution were on hand; every
  // retained inequality then ties it to quantities the data do supply.
  std::vector<VarSet> augmented = given_intervened;
  augmented.push_back(all & ~target_free);
  AvailabilityContext avail(og, closure, augmented);
  FindIneqsResult found = find_ineqs(avail, opts.component_cap);

  std::vector<UsableKept> usable = usable_kept(found, target_free, res.notes);
  if (usable.empty()) {
    push_note(res.notes,
              "no retained constraint mentions the target; only the "
              "probability bounds apply");
  }

  if (opts.mode == BoundsOptions::Mode::per_cell) {
    per_cell_bounds(og, tables, found, usable, target_free, opts, res);
  } else {
    joint_lp_bounds(og, tables, found, usable, target_free, opts, res);
  }
  return res;
}

}  // namespace causalineq
