#include "causalineq/availability.hpp"

#include <algorithm>

namespace causalineq {

AvailabilityContext::AvailabilityContext(
    const OrderedGraph& og, const IdentifiedClosure& closure,
    const std::vector<VarSet>& given_intervened_sets)
    : og_(&og), closure_(&closure) {
  const CausalGraph& g = og.g();
  const VarSet all = g.all_observed();
  for (VarSet intervened : given_intervened_sets) {
    if (std::find(given_.begin(), given_.end(), intervened) != given_.end()) {
      continue;
    }
    given_.push_back(intervened);
    if (intervened == 0) {
      // The observational joint unlocks the identified closure; its block
      // factors need no table-splitting formulas.
      has_observational_ = true;
      continue;
    }
    VarSet free = all & ~intervened;
    ExprPtr term = make_term(free, g.external_parents(free));
    factors_.emplace(free, term);
    std::vector<VarSet> blocks = c_components_within(g, free);
    if (blocks.size() >= 2) {
      for (VarSet b : blocks) {
        if (!factors_.count(b)) {
          factors_.emplace(b, block_factor_from(og, term, free, b));
        }
      }
    }
  }
}

bool AvailabilityContext::available(VarSet free) const {
  if (free == 0) return true;
  for (VarSet b : c_components_within(og_->g(), free)) {
    if (factors_.count(b)) continue;
    if (has_observational_ && closure_->identified(b)) continue;
    return false;
  }
  return true;
}

ExprPtr AvailabilityContext::resolve_block(VarSet block) const {
  if (has_observational_ && closure_->identified(block)) {
    return closure_->formula(block);
  }
  auto it = factors_.find(block);
  if (it != factors_.end()) return it->second;
  throw InputError("factor of {" + set_names(og_->g(), block) +
                   "} is not available");
}

ExprPtr AvailabilityContext::resolve(VarSet free) const {
  if (free == 0) return make_const(1.0);
  std::vector<VarSet> blocks = c_components_within(og_->g(), free);
  if (blocks.size() == 1) return resolve_block(blocks[0]);
  // List block factors by first member position so products display in the
  // usual latest-first chain style.
  std::sort(blocks.begin(), blocks.end(), [&](VarSet a, VarSet b) {
    auto first_pos = [&](VarSet s) {
      int best = 1 << 30;
      for (int i : set_members(s)) best = std::min(best, og_->position[i]);
      return best;
    };
    return first_pos(a) < first_pos(b);
  });
  std::vector<ExprPtr> parts;
  for (VarSet b : blocks) parts.push_back(resolve_block(b));
  return make_product(std::move(parts));
}

VarSet AvailabilityContext::signature(VarSet free) const {
  return og_->g().external_parents(free);
}

}  // namespace causalineq
