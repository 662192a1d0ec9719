#pragma once

#include <map>
#include <vector>

#include "causalineq/equality.hpp"
#include "causalineq/expr.hpp"
#include "causalineq/graph.hpp"

namespace causalineq {

// Which interventional distributions a derived formula may reference, given
// the set of distributions the user actually has. A free set R is available
// when it is empty, when its factor is computable from a given observational
// joint, when some given distribution has exactly free set R, or when R is a
// c-component block of a given distribution's free set (those block factors
// are computable from the given table by ratios of partial sums). Composite
// sets are available when every block of their own subgraph is.
class AvailabilityContext {
 public:
  AvailabilityContext(const OrderedGraph& og, const IdentifiedClosure& closure,
                      const std::vector<VarSet>& given_intervened_sets);

  bool available(VarSet free) const;
  // Access formula over the observational joint and the given tables; throws
  // InputError when `free` is not available.
  ExprPtr resolve(VarSet free) const;
  // Reduced intervened subscript of the factor with free set `free`.
  VarSet signature(VarSet free) const;

  bool has_observational() const { return has_observational_; }
  const OrderedGraph& ordered() const { return *og_; }
  const IdentifiedClosure& closure() const { return *closure_; }
  const std::vector<VarSet>& given_intervened() const { return given_; }

 private:
  ExprPtr resolve_block(VarSet block) const;

  const OrderedGraph* og_;
  const IdentifiedClosure* closure_;
  std::vector<VarSet> given_;
  bool has_observational_ = false;
  std::map<VarSet, ExprPtr> factors_;  // free set -> formula over given tables
};

}  // namespace causalineq
