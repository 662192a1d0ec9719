#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "causalineq/graph.hpp"
#include "causalineq/types.hpp"

namespace causalineq {

// Dense probability table over the full observed assignment space, row-major
// with the last variable fastest. `intervened` names the variables held fixed
// by intervention; the cell at assignment v is the probability that the
// remaining (free) variables take their v-values when the intervened ones are
// set to theirs. Keeping the full space even for intervened variables lets a
// single indexing scheme serve every distribution attached to one graph.
struct DistributionTable {
  VarSet intervened = 0;
  std::vector<int> sizes;
  std::vector<double> values;

  static DistributionTable zeros(const CausalGraph& g, VarSet intervened);

  int var_count() const { return static_cast<int>(sizes.size()); }
  VarSet free_set() const {
    return ((var_count() == 64 ? ~VarSet{0} : (VarSet{1} << var_count()) - 1) &
            ~intervened);
  }
  std::size_t index_of(const std::vector<int>& assignment) const;
  double at(const std::vector<int>& assignment) const {
    return values[index_of(assignment)];
  }
  double& at(const std::vector<int>& assignment) {
    return values[index_of(assignment)];
  }
};

// Runs `fn` once per joint assignment of `vars` (ascending index, last
// fastest), writing values into `assignment` in place and restoring nothing:
// callers own the fixed coordinates outside `vars`.
template <typename F>
void for_each_assignment(const std::vector<int>& sizes, VarSet vars, std::vector<int>& assignment, F&& fn) {
  std::vector<int> members = set_members(vars);
  for (int m : members) assignment[m] = 0;
  while (true) {
    fn();
    int j = static_cast<int>(members.size()) - 1;
    for (; j >= 0; --j) {
      int m = members[j];
      if (++assignment[m] < sizes[m]) break;
      assignment[m] = 0;
    }
    if (j < 0) return;
  }
}

// Verifies that for every assignment of the intervened variables the free
// values sum to 1 within `tol`; throws InputError otherwise.
void check_normalization(const DistributionTable& t, double tol);

// Lazily materialized marginals of one observational joint, keyed by the kept
// variable set. Compact storage per marginal: kept members ascending, last
// fastest.
class MarginalCache {
 public:
  explicit MarginalCache(const DistributionTable* obs) : obs_(obs) {}

  // P(kept = assignment-values); kept == 0 yields 1.
  double prob(VarSet kept, const std::vector<int>& assignment) const;
  // P(head-values | cond-values) with the 0/0 := 0 convention.
  double cond(VarSet head, VarSet cond, const std::vector<int>& assignment) const;

 private:
  const std::vector<double>& marginal(VarSet kept) const;

  const DistributionTable* obs_;
  mutable std::unordered_map<VarSet, std::vector<double>> cache_;
};

// The numeric context constraints are evaluated against: one table per
// intervened set, all over the same graph.
class TableSet {
 public:
  explicit TableSet(const CausalGraph* g) : g_(g) {}

  void add(DistributionTable t);
  const DistributionTable* find_intervened(VarSet intervened) const;
  const DistributionTable* find_free(VarSet free) const;
  const DistributionTable* observational() const { return find_intervened(0); }
  // Null when no observational table is present.
  MarginalCache* obs_marginals() const;
  std::vector<VarSet> intervened_sets() const;
  const CausalGraph& graph() const { return *g_; }

 private:
  const CausalGraph* g_;
  std::map<VarSet, DistributionTable> by_intervened_;
  mutable std::unique_ptr<MarginalCache> marginals_;
};

}  // namespace causalineq
