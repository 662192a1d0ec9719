#pragma once

#include <string>
#include <vector>

#include "causalineq/availability.hpp"
#include "causalineq/equality.hpp"
#include "causalineq/inequality.hpp"
#include "causalineq/table.hpp"

namespace causalineq {

struct BoundsOptions {
  enum class Mode {
    // Read each retained inequality off at every assignment separately.
    per_cell,
    // Treat the target's cells as one unknown distribution and optimize each
    // cell subject to all constraints and normalization at once.
    joint_lp,
  };

  Mode mode = Mode::per_cell;
  int component_cap = kDefaultComponentCap;
  double tolerance = 1e-9;
  // Largest number of choice combinations expanded when linearizing one
  // minimized constraint in joint mode.
  std::size_t max_selections = 1024;
};

struct CellBound {
  std::vector<int> assignment;
  double lower = 0.0;
  double upper = 1.0;
  std::string lower_source = "probability";
  std::string upper_source = "probability";
};

struct BoundsResult {
  VarSet target_free = 0;
  // Variables the target factor's value can depend on.
  VarSet target_deps = 0;
  bool point_identified = false;
  ExprPtr identified_formula;  // set only when point_identified
  // per_cell and point-identified results list one row per full assignment;
  // joint_lp lists one row per assignment of target_deps.
  std::vector<CellBound> cells;
  std::vector<std::string> notes;
};

// Bounds on the factor with free set `target_free` (the distribution of
// target_free under intervention on everything else), from the distributions
// in `given_intervened`/`tables`. If the target is already computable the
// result is its exact value. Otherwise the derivation reruns the
// availability-aware inequality search with the target adjoined as if it were
// available and solves each retained constraint for the target's cells.
BoundsResult derive_bounds(const OrderedGraph& og,
                           const IdentifiedClosure& closure,
                           const std::vector<VarSet>& given_intervened,
                           const TableSet& tables, VarSet target_free,
                           const BoundsOptions& opts = {});

}  // namespace causalineq
