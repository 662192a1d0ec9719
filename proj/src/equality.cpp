#include "causalineq/equality.hpp"

#include <algorithm>

namespace causalineq {

namespace {

std::string lower_set(const OrderedGraph& og, VarSet s) {
  std::string out;
  for (char c : set_names_ordered(og, s)) {
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Blocks of c_components_within are listed by smallest index; listings that
// face the user go by smallest position in the chosen order instead.
std::vector<VarSet> blocks_by_position(const OrderedGraph& og, VarSet domain) {
  std::vector<VarSet> blocks = c_components_within(og.g(), domain);
  std::sort(blocks.begin(), blocks.end(), [&](VarSet a, VarSet b) {
    auto first_pos = [&](VarSet s) {
      int best = 1 << 30;
      for (int i : set_members(s)) best = std::min(best, og.position[i]);
      return best;
    };
    return first_pos(a) < first_pos(b);
  });
  return blocks;
}

// True when `expr` is a product of conditionals with pairwise disjoint heads
// covering exactly `cover`; fills `factors`.
bool as_chain(const ExprPtr& expr, VarSet cover,
              std::vector<ExprPtr>& factors) {
  factors.clear();
  auto take = [&](const ExprPtr& e) {
    if (e->kind != Expr::Kind::conditional) return false;
    factors.push_back(e);
    return true;
  };
  if (expr->kind == Expr::Kind::product) {
    for (const auto& kid : expr->kids) {
      if (!take(kid)) return false;
    }
  } else if (!take(expr)) {
    return false;
  }
  VarSet seen = 0;
  for (const auto& f : factors) {
    if (f->head & seen) return false;
    seen |= f->head;
  }
  return seen == cover;
}

}  // namespace

std::vector<VarSet> component_factors(const CausalGraph& g, VarSet h) {
  return c_components_within(g, h);
}

ExprPtr component_chain_formula(const OrderedGraph& og, VarSet component) {
  std::vector<int> members = set_members(component);
  std::sort(members.begin(), members.end(), [&](int a, int b) {
    return og.position[a] < og.position[b];
  });
  std::vector<ExprPtr> factors;
  for (int m : members) {
    factors.push_back(make_conditional(var_bit(m), og.predecessors(m)));
  }
  return make_product(std::move(factors));
}

ExprPtr sum_out_factor(const OrderedGraph&, ExprPtr expr, VarSet drop) {
  if (drop == 0) return expr;
  std::vector<ExprPtr> factors;
  if (expr->kind == Expr::Kind::product) {
    for (const auto& kid : expr->kids) {
      if (kid->kind != Expr::Kind::conditional) {
        // Not a plain conditional product; keep the sum explicit.
        return make_sum(drop, std::move(expr));
      }
      factors.push_back(kid);
    }
  } else if (expr->kind == Expr::Kind::conditional) {
    factors.push_back(expr);
  } else {
    return make_sum(drop, std::move(expr));
  }

  VarSet remaining = drop;
  bool changed = true;
  while (changed && remaining) {
    changed = false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      VarSet h = factors[i]->head;
      if (!is_subset(h, remaining)) continue;
      VarSet elsewhere = 0;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        if (j != i) elsewhere |= factors[j]->head | factors[j]->cond;
      }
      if (h & elsewhere) continue;
      factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(i));
      remaining &= ~h;
      changed = true;
      break;
    }
  }
  return make_sum(remaining, make_product(std::move(factors)));
}

ExprPtr block_factor_from(const OrderedGraph& og, ExprPtr h_expr, VarSet h,
                          VarSet block) {
  std::vector<ExprPtr> factors;
  if (as_chain(h_expr, h, factors)) {
    std::vector<ExprPtr> kept;
    for (const auto& f : factors) {
      if (is_subset(f->head, block)) kept.push_back(f);
    }
    std::sort(kept.begin(), kept.end(), [&](const ExprPtr& a, const ExprPtr& b) {
      return og.position[std::countr_zero(a->head)] <
             og.position[std::countr_zero(b->head)];
    });
    return make_product(std::move(kept));
  }
  // General form: a ratio of partial sums per block member along the order.
  std::vector<int> members = set_members(h);
  std::sort(members.begin(), members.end(), [&](int a, int b) {
    return og.position[a] < og.position[b];
  });
  std::vector<ExprPtr> ratios;
  VarSet after = h;
  for (int m : members) {
    VarSet with = after;       // m and everything later
    after &= ~var_bit(m);      // strictly later than m
    if (contains(block, m)) {
      ratios.push_back(make_ratio(sum_out_factor(og, h_expr, after),
                                  sum_out_factor(og, h_expr, with)));
    }
  }
  std::reverse(ratios.begin(), ratios.end());  // ascending position
  return make_product(std::move(ratios));
}

IdentifiedClosure::IdentifiedClosure(const OrderedGraph& og, int component_cap)
    : og_(&og) {
  components_ = blocks_by_position(og, og.g().all_observed());
  for (VarSet ti : components_) {
    if (set_size(ti) > component_cap) {
      throw CapError("c-component {" + set_names(og.g(), ti) + "} has " +
                     std::to_string(set_size(ti)) +
                     " variables; the configured cap is " +
                     std::to_string(component_cap));
    }
  }
  for (VarSet ti : components_) saturate(ti);
}

void IdentifiedClosure::saturate(VarSet ti) {
  const CausalGraph& g = og_->g();
  entries_[ti] = {component_chain_formula(*og_, ti),
                  "chain factorization over the topological order"};
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<VarSet> keys;
    for (const auto& [s, _] : entries_) {
      if (s && is_subset(s, ti)) keys.push_back(s);
    }
    std::sort(keys.begin(), keys.end(), [&](VarSet a, VarSet b) {
      if (set_size(a) != set_size(b)) return set_size(a) > set_size(b);
      return canonical_set_less(g, a, b);
    });
    for (VarSet s : keys) {
      ExprPtr expr = entries_[s].expr;
      // Sum out s\w whenever w already contains all of its own observed
      // ancestors inside the subgraph over s.
      for_each_subset(s, [&](VarSet w) {
        if (w == 0 || w == s || entries_.count(w)) return;
        if (observed_ancestors_within(g, s, w) != w) return;
        entries_[w] = {sum_out_factor(*og_, expr, s & ~w),
                       "summed {" + set_names(g, s & ~w) +
                           "} out of the factor of {" + set_names(g, s) + "}"};
        changed = true;
      });
      std::vector<VarSet> blocks = c_components_within(g, s);
      if (blocks.size() >= 2) {
        for (VarSet b : blocks) {
          if (entries_.count(b)) continue;
          entries_[b] = {block_factor_from(*og_, expr, s, b),
                         "split block {" + set_names(g, b) +
                             "} out of the factor of {" + set_names(g, s) +
                             "}"};
          changed = true;
        }
      }
    }
    // Multiply known blocks back together.
    for_each_subset(ti, [&](VarSet s) {
      if (s == 0 || entries_.count(s)) return;
      std::vector<VarSet> blocks = blocks_by_position(*og_, s);
      if (blocks.size() < 2) return;
      std::vector<ExprPtr> parts;
      for (VarSet b : blocks) {
        auto it = entries_.find(b);
        if (it == entries_.end()) return;
        parts.push_back(it->second.expr);
      }
      entries_[s] = {make_product(std::move(parts)),
                     "product of the factors of its c-component blocks"};
      changed = true;
    });
  }
}

bool IdentifiedClosure::identified(VarSet s) const {
  if (s == 0) return true;
  for (VarSet b : c_components_within(og_->g(), s)) {
    if (!entries_.count(b)) return false;
  }
  return true;
}

const IdentifiedEntry* IdentifiedClosure::find(VarSet s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

ExprPtr IdentifiedClosure::formula(VarSet s) const {
  if (s == 0) return make_const(1.0);
  if (const IdentifiedEntry* e = find(s)) return e->expr;
  std::vector<ExprPtr> parts;
  for (VarSet b : blocks_by_position(*og_, s)) {
    const IdentifiedEntry* e = find(b);
    if (!e) {
      throw InputError("factor of {" + set_names(og_->g(), s) +
                       "} is not computable from the observational joint");
    }
    parts.push_back(e->expr);
  }
  return make_product(std::move(parts));
}

std::vector<VarSet> canonical_subsets(const CausalGraph& g, VarSet mask,
                                      bool include_empty) {
  std::vector<VarSet> subs;
  for_each_subset(mask, [&](VarSet s) {
    if (s || include_empty) subs.push_back(s);
  });
  std::sort(subs.begin(), subs.end(),
            [&](VarSet a, VarSet b) { return canonical_set_less(g, a, b); });
  return subs;
}

std::vector<EqualityConstraint> enumerate_equalities(
    const OrderedGraph& og, const IdentifiedClosure& closure,
    const EqualityOptions& opts) {
  const CausalGraph& g = og.g();
  const VarSet all = g.all_observed();
  std::vector<EqualityConstraint> out;

  for (VarSet ti : closure.components()) {
    for (VarSet s : canonical_subsets(g, ti, false)) {
      EqualityConstraint e;
      e.subject = s;
      e.id = "eq:" + lower_set(og, s);
      e.lhs = make_term(s, all & ~s);
      if (const IdentifiedEntry* ent = closure.find(s)) {
        e.rhs = ent->expr;
        e.identified = true;
        e.note = "factor of {" + set_names_ordered(og, s) +
                 "} is computable from the observational joint (" + ent->note +
                 ")";
      } else {
        VarSet pa = g.external_parents(s);
        VarSet c = all & ~pa;
        VarSet d = c & ~s;
        if (d == 0) continue;  // the subscript is already minimal
        e.rhs = make_sum(d, make_term(c, pa));
        e.identified = false;
        e.note = "releasing the intervention on {" + set_names_ordered(og, d) +
                 "} (no member is a direct influence of {" +
                 set_names_ordered(og, s) + "}) leaves the factor unchanged";
      }
      out.push_back(std::move(e));
    }
  }

  if (opts.full_enumeration) {
    for (VarSet s : canonical_subsets(g, all, false)) {
      if (s == all) continue;  // that product is the joint decomposition
      std::vector<std::pair<VarSet, VarSet>> parts;  // (part, reduced sig)
      for (VarSet ti : closure.components()) {
        if (s & ti) parts.emplace_back(s & ti, g.external_parents(s & ti));
      }
      if (parts.size() < 2) continue;
      EqualityConstraint e;
      e.subject = s;
      e.id = "eq:" + lower_set(og, s);
      e.lhs = make_term(s, all & ~s);
      std::vector<ExprPtr> kids;
      for (auto& [part, sig] : parts) kids.push_back(make_term(part, sig));
      e.rhs = make_product(std::move(kids));
      e.identified = false;
      e.note = "factor of {" + set_names_ordered(og, s) +
               "} is the product of its per-component pieces";
      out.push_back(std::move(e));
    }
  }

  EqualityConstraint joint;
  joint.subject = 0;
  joint.id = "eq:joint";
  joint.lhs = make_term(all, 0);
  std::vector<ExprPtr> kids;
  for (VarSet ti : closure.components()) {
    kids.push_back(make_term(ti, g.external_parents(ti)));
  }
  joint.rhs = make_product(std::move(kids));
  joint.identified = true;
  joint.note = "the joint splits into one factor per c-component";
  out.push_back(std::move(joint));
  return out;
}

}  // namespace causalineq
