#pragma once

#include <string>
#include <vector>

#include "causalineq/availability.hpp"
#include "causalineq/equality.hpp"
#include "causalineq/expr.hpp"

namespace causalineq {

struct SignedTerm {
  int sign = 1;    // +1 or -1
  VarSet free = 0; // empty set stands for the constant 1
};

enum class IneqTriviality {
  none,
  // Every term is computable from the observational joint, so the inequality
  // adds nothing beyond the equality constraints.
  implied_by_equalities,
  // A single nonnegative factor.
  single_term,
};

// sum over s2 ⊆ s1p\s1 of (-1)^{|s2|} P_{v\(s1∪s2)}(v) >= 0: the probability
// that the mechanisms of s1 produce v while every mechanism of s1p\s1
// deviates from v, under any intervention fixing the rest.
struct ExpansionIneq {
  std::string id;
  VarSet component = 0;
  VarSet s1 = 0;
  VarSet s1p = 0;
  std::vector<SignedTerm> terms;  // size ascending, then name-lex
  IneqTriviality triviality = IneqTriviality::none;
  std::string display;
};

ExpansionIneq expansion_inequality(const OrderedGraph& og,
                                   const IdentifiedClosure& closure,
                                   VarSet component, VarSet s1, VarSet s1p);

// The full battery for one c-component: the outer set pinned to the whole
// component (smaller outer sets are implied), the inner set sweeping all
// subsets.
std::vector<ExpansionIneq> component_inequality_family(
    const OrderedGraph& og, const IdentifiedClosure& closure, VarSet component,
    int component_cap = kDefaultComponentCap);

// True when keeping `b` makes `a` redundant: same inner set, outer set
// strictly contained in b's.
bool family_subsumes(const ExpansionIneq& a, const ExpansionIneq& b);

struct KeptIneq {
  ExpansionIneq ineq;
  // Access formulas aligned with ineq.terms.
  std::vector<ExprPtr> resolved;
};

// An inequality with some terms unavailable, reduced to available quantities:
// pointwise, min over `min_vars` of the available side dominates the negated
// unavailable side; summing the unavailable side over `sum_vars` then turns
// it into the integer `rhs`, leaving
//   sum over sum_vars of (min over min_vars of available side) >= rhs.
struct ProjectedIneq {
  std::string id;
  VarSet component = 0;
  VarSet s1 = 0;
  VarSet s1p = 0;
  std::vector<SignedTerm> available;
  std::vector<ExprPtr> available_resolved;  // aligned with `available`
  std::vector<SignedTerm> unavailable;
  VarSet min_vars = 0;
  VarSet sum_vars = 0;
  double rhs = 0;
  // No unknown left on the large side and the bound already holds.
  bool tautological = false;
  std::string display;            // summed max-form
  std::string display_pointwise;  // pre-summation max-form
};

struct FindIneqsResult {
  std::vector<KeptIneq> kept;
  std::vector<ProjectedIneq> projected;
};

// Availability-aware derivation: keeps each inequality whose terms are all
// available (pruning non-maximal outer sets per inner set) and projects every
// other one onto the available set.
FindIneqsResult find_ineqs(const AvailabilityContext& availability,
                           int component_cap = kDefaultComponentCap);

}  // namespace causalineq
