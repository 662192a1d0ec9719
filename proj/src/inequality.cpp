#include "causalineq/inequality.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace causalineq {

namespace {

std::string lower_set(const OrderedGraph& og, VarSet s) {
  std::string out;
  for (char c : set_names_ordered(og, s)) {
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string set_label(const OrderedGraph& og, VarSet s) {
  return "{" + lower_set(og, s) + "}";
}

// P_{v \ free}(free values), subscripts spelled in full.
std::string full_term_display(const OrderedGraph& og, VarSet free) {
  VarSet all = og.g().all_observed();
  return display_expr(og, make_term(free, all & ~free));
}

std::string format_int(double v) {
  long long n = static_cast<long long>(v < 0 ? v - 0.5 : v + 0.5);
  return std::to_string(n);
}

// " + a - b"-style concatenation; the first element omits a positive sign.
void append_signed(std::string& out, int sign, const std::string& atom) {
  if (out.empty()) {
    if (sign < 0) out += "-";
  } else {
    out += sign < 0 ? " - " : " + ";
  }
  out += atom;
}

std::vector<SignedTerm> expansion_terms(const CausalGraph& g, VarSet s1,
                                        VarSet s1p) {
  std::vector<VarSet> frees;
  for_each_subset(s1p & ~s1, [&](VarSet s2) { frees.push_back(s1 | s2); });
  std::sort(frees.begin(), frees.end(),
            [&](VarSet a, VarSet b) { return canonical_set_less(g, a, b); });
  std::vector<SignedTerm> terms;
  terms.reserve(frees.size());
  for (VarSet f : frees) {
    int sign = set_size(f & ~s1) % 2 == 0 ? 1 : -1;
    terms.push_back({sign, f});
  }
  return terms;
}

void require_component_size(const CausalGraph& g, VarSet component, int cap) {
  if (set_size(component) > cap) {
    throw CapError("c-component {" + set_names(g, component) + "} has " +
                   std::to_string(set_size(component)) +
                   " variables; the configured cap is " + std::to_string(cap));
  }
}

ProjectedIneq project_pair(const AvailabilityContext& avail, VarSet component,
                           VarSet s1, VarSet s1p) {
  const OrderedGraph& og = avail.ordered();
  const CausalGraph& g = og.g();
  const IdentifiedClosure& closure = avail.closure();
  std::vector<int> sizes = g.domain_sizes();

  ProjectedIneq p;
  p.id = "proj:" + set_label(og, s1) + ":" + set_label(og, s1p);
  p.component = component;
  p.s1 = s1;
  p.s1p = s1p;

  int const_sign_sum = 0;
  for (const SignedTerm& t : expansion_terms(g, s1, s1p)) {
    if (t.free == 0) {
      p.available.push_back(t);
      p.available_resolved.push_back(make_const(1.0));
      const_sign_sum += t.sign;
    } else if (avail.available(t.free)) {
      p.available.push_back(t);
      p.available_resolved.push_back(avail.resolve(t.free));
    } else {
      p.unavailable.push_back(t);
    }
  }

  VarSet known_deps = 0;
  for (const ExprPtr& e : p.available_resolved) {
    known_deps |= expr_dependencies(e);
  }
  VarSet unknown_deps = 0;
  for (const SignedTerm& t : p.unavailable) {
    unknown_deps |= t.free | g.external_parents(t.free);
    p.sum_vars |= t.free;
  }
  p.min_vars = known_deps & ~unknown_deps;

  // Summing each unknown factor over all free values of the whole group
  // yields an exact integer: a factor sums to 1 over its own free set in
  // every context, and the remaining coordinates contribute their domain
  // product.
  double negated_sum = 0.0;
  for (const SignedTerm& t : p.unavailable) {
    double cells = 1.0;
    for (int m : set_members(p.sum_vars & ~t.free)) cells *= sizes[m];
    negated_sum += t.sign * cells;
  }
  p.rhs = -negated_sum;

  // Display entries: formula when the factor comes from the identified
  // closure, plain subscripted term when it comes from a handed-over table.
  auto entry_display = [&](std::size_t i) {
    VarSet free = p.available[i].free;
    if (avail.has_observational() && closure.identified(free)) {
      return display_expr(og, p.available_resolved[i]);
    }
    return display_expr(og, make_term(free, avail.signature(free)));
  };

  std::vector<std::pair<int, std::string>> lhs_entries;  // negated known side
  for (std::size_t i = 0; i < p.available.size(); ++i) {
    if (p.available[i].free == 0) continue;
    lhs_entries.push_back({-p.available[i].sign, entry_display(i)});
  }

  double domain_cells = 1.0;
  for (int m : set_members(p.sum_vars)) domain_cells *= sizes[m];

  if (lhs_entries.empty()) {
    double lhs_const = const_sign_sum * domain_cells;
    p.tautological = lhs_const >= p.rhs - 1e-12;
  }

  std::string bracket;
  for (const auto& [sign, atom] : lhs_entries) {
    append_signed(bracket, sign, atom);
  }
  bool need_brackets =
      lhs_entries.size() > 1 || (!lhs_entries.empty() && lhs_entries[0].first < 0);
  if (need_brackets) bracket = "[" + bracket + "]";

  std::string max_prefix;
  if (p.min_vars != 0) max_prefix = "max_{" + lower_set(og, p.min_vars) + "} ";

  double display_rhs = -p.rhs + const_sign_sum * domain_cells;
  if (lhs_entries.empty()) {
    p.display = "0 ≤ " + format_int(display_rhs);
  } else {
    p.display = "Σ_{" + lower_set(og, p.sum_vars) + "} " + max_prefix +
                bracket + " ≤ " + format_int(display_rhs);
  }

  std::string rhs_pointwise;
  if (const_sign_sum != 0) append_signed(rhs_pointwise, const_sign_sum, "1");
  for (const SignedTerm& t : p.unavailable) {
    append_signed(rhs_pointwise, t.sign,
                  display_expr(og, make_term(t.free, avail.signature(t.free))));
  }
  p.display_pointwise =
      (lhs_entries.empty() ? std::string("0") : max_prefix + bracket) + " ≤ " +
      rhs_pointwise;

  return p;
}

}  // namespace

ExpansionIneq expansion_inequality(const OrderedGraph& og,
                                   const IdentifiedClosure& closure,
                                   VarSet component, VarSet s1, VarSet s1p) {
  const CausalGraph& g = og.g();
  if (!is_subset(s1, s1p) || !is_subset(s1p, component)) {
    throw InputError("expansion requires inner {" + set_names(g, s1) +
                     "} within outer {" + set_names(g, s1p) +
                     "} within component {" + set_names(g, component) + "}");
  }
  ExpansionIneq e;
  e.component = component;
  e.s1 = s1;
  e.s1p = s1p;
  e.id = "ineq:" + set_label(og, s1) + ":" + set_label(og, s1p);
  e.terms = expansion_terms(g, s1, s1p);

  bool all_identified = true;
  for (const SignedTerm& t : e.terms) {
    if (!closure.identified(t.free)) all_identified = false;
  }
  if (all_identified) {
    e.triviality = IneqTriviality::implied_by_equalities;
  } else if (e.terms.size() == 1) {
    e.triviality = IneqTriviality::single_term;
  }

  std::string out;
  for (const SignedTerm& t : e.terms) {
    append_signed(out, t.sign,
                  t.free == 0 ? "1" : full_term_display(og, t.free));
  }
  e.display = out + " ≥ 0";
  return e;
}

std::vector<ExpansionIneq> component_inequality_family(
    const OrderedGraph& og, const IdentifiedClosure& closure, VarSet component,
    int component_cap) {
  require_component_size(og.g(), component, component_cap);
  std::vector<ExpansionIneq> family;
  for (VarSet s1 : canonical_subsets(og.g(), component, true)) {
    family.push_back(
        expansion_inequality(og, closure, component, s1, component));
  }
  return family;
}

bool family_subsumes(const ExpansionIneq& a, const ExpansionIneq& b) {
  return a.component == b.component && a.s1 == b.s1 &&
         is_proper_subset(a.s1p, b.s1p);
}

FindIneqsResult find_ineqs(const AvailabilityContext& availability,
                           int component_cap) {
  const OrderedGraph& og = availability.ordered();
  const CausalGraph& g = og.g();
  const IdentifiedClosure& closure = availability.closure();

  FindIneqsResult out;
  for (VarSet component : c_components(g)) {
    require_component_size(g, component, component_cap);
    std::vector<KeptIneq> kept;
    std::vector<std::pair<VarSet, VarSet>> needs_projection;
    std::vector<VarSet> subsets = canonical_subsets(g, component, true);
    for (VarSet s1 : subsets) {
      for (VarSet s1p : subsets) {
        if (!is_subset(s1, s1p)) continue;
        ExpansionIneq e =
            expansion_inequality(og, closure, component, s1, s1p);
        bool all_available = true;
        for (const SignedTerm& t : e.terms) {
          if (t.free != 0 && !availability.available(t.free)) {
            all_available = false;
            break;
          }
        }
        if (!all_available) {
          needs_projection.push_back({s1, s1p});
          continue;
        }
        // Enumeration goes small to large, so earlier keepers with the same
        // inner set and a smaller outer set are now implied.
        kept.erase(std::remove_if(kept.begin(), kept.end(),
                                  [&](const KeptIneq& k) {
                                    return family_subsumes(k.ineq, e);
                                  }),
                   kept.end());
        KeptIneq k;
        k.ineq = std::move(e);
        for (const SignedTerm& t : k.ineq.terms) {
          k.resolved.push_back(t.free == 0 ? make_const(1.0)
                                           : availability.resolve(t.free));
        }
        kept.push_back(std::move(k));
      }
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [&](const KeptIneq& a, const KeptIneq& b) {
                       return canonical_set_less(g, a.ineq.s1, b.ineq.s1);
                     });
    for (auto& k : kept) out.kept.push_back(std::move(k));
    for (auto [s1, s1p] : needs_projection) {
      out.projected.push_back(project_pair(availability, component, s1, s1p));
    }
  }
  return out;
}

}  // namespace causalineq
