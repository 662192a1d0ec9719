#pragma once

#include <map>
#include <string>
#include <vector>

#include "causalineq/expr.hpp"
#include "causalineq/graph.hpp"

namespace causalineq {

inline constexpr int kDefaultComponentCap = 10;

// The hidden-variable factor of a set H splits into one factor per
// c-component of the subgraph over H; returns the blocks.
std::vector<VarSet> component_factors(const CausalGraph& g, VarSet h);

// Chain formula for the c-factor of a full-graph c-component: the product of
// P(member | all order-predecessors) over its members, ascending.
ExprPtr component_chain_formula(const OrderedGraph& og, VarSet component);

// Symbolic sum of a c-factor formula over `drop`. Conditional factors whose
// heads come last telescope away; anything left stays under an explicit sum
// node.
ExprPtr sum_out_factor(const OrderedGraph& og, ExprPtr expr, VarSet drop);

// Given a formula for the factor of `h`, the factor of one c-component block
// of the subgraph over `h` via ratios of partial sums along the order. For
// chain input this collapses to the block's own conditionals.
ExprPtr block_factor_from(const OrderedGraph& og, ExprPtr h_expr, VarSet h,
                          VarSet block);

struct IdentifiedEntry {
  ExprPtr expr;
  std::string note;
};

// All subsets of each c-component whose c-factor is computable from the
// observational joint alone, with formulas. Saturated under three rules:
// summing out a subset whose complement-in-S is closed under observed
// ancestors, splitting S into the c-component blocks of its own subgraph,
// and multiplying blocks back together.
class IdentifiedClosure {
 public:
  explicit IdentifiedClosure(const OrderedGraph& og,
                             int component_cap = kDefaultComponentCap);

  const OrderedGraph& ordered() const { return *og_; }
  const std::vector<VarSet>& components() const { return components_; }

  // Accepts any observed set; a composite set counts as identified when every
  // c-component block of its own subgraph is.
  bool identified(VarSet s) const;
  ExprPtr formula(VarSet s) const;
  const IdentifiedEntry* find(VarSet s) const;

 private:
  void saturate(VarSet component);

  const OrderedGraph* og_;
  std::vector<VarSet> components_;
  std::map<VarSet, IdentifiedEntry> entries_;
};

struct EqualityConstraint {
  std::string id;
  VarSet subject = 0;   // the c-factor's set; 0 for the joint decomposition
  ExprPtr lhs;
  ExprPtr rhs;
  bool identified = false;  // rhs is observational (vs a reduced-term form)
  std::string note;
};

struct EqualityOptions {
  // Also emit one product equality for every union of pieces across
  // c-components (2^n sets) instead of only per-component subsets.
  bool full_enumeration = false;
  int component_cap = kDefaultComponentCap;
};

// The canonical equality battery: per nonempty S inside a c-component either
// an observational formula (when identified) or the reduced-signature
// marginal equality over the complement of S's external parents, plus the
// c-component product decomposition of the joint.
std::vector<EqualityConstraint> enumerate_equalities(
    const OrderedGraph& og, const IdentifiedClosure& closure,
    const EqualityOptions& opts = {});

// Subsets of `mask`, smallest first, ties by member names; the shared
// enumeration order for constraint listings.
std::vector<VarSet> canonical_subsets(const CausalGraph& g, VarSet mask,
                                      bool include_empty);

}  // namespace causalineq
