#include "causalineq/table.hpp"

#include <cmath>
#include <numeric>

namespace causalineq {

DistributionTable DistributionTable::zeros(const CausalGraph& g,
                                           VarSet intervened) {
  DistributionTable t;
  t.intervened = intervened;
  t.sizes = g.domain_sizes();
  std::size_t cells = 1;
  for (int s : t.sizes) cells *= static_cast<std::size_t>(s);
  t.values.assign(cells, 0.0);
  return t;
}

std::size_t DistributionTable::index_of(
    const std::vector<int>& assignment) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    idx = idx * static_cast<std::size_t>(sizes[i]) +
          static_cast<std::size_t>(assignment[i]);
  }
  return idx;
}

void check_normalization(const DistributionTable& t, double tol) {
  std::vector<int> assignment(t.sizes.size(), 0);
  VarSet free = t.free_set();
  bool bad = false;
  double worst = 0;
  std::vector<int> fixed = assignment;
  for_each_assignment(t.sizes, t.intervened, assignment, [&] {
    double sum = 0;
    for_each_assignment(t.sizes, free, assignment,
                        [&] { sum += t.at(assignment); });
    if (std::abs(sum - 1.0) > std::abs(worst)) {
      worst = sum - 1.0;
      fixed = assignment;
    }
    if (std::abs(sum - 1.0) > tol) bad = true;
  });
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (t.values[i] < -tol) {
      throw InputError("table has a negative entry");
    }
  }
  if (bad) {
    throw InputError("table is not normalized: free values sum to 1" +
                     std::string(worst >= 0 ? "+" : "-") +
                     std::to_string(std::abs(worst)));
  }
}

const std::vector<double>& MarginalCache::marginal(VarSet kept) const {
  auto it = cache_.find(kept);
  if (it != cache_.end()) return it->second;

  std::vector<int> members = set_members(kept);
  std::size_t cells = 1;
  for (int m : members) cells *= static_cast<std::size_t>(obs_->sizes[m]);
  std::vector<double> table(cells, 0.0);

  std::vector<int> assignment(obs_->sizes.size(), 0);
  VarSet all = obs_->free_set() | obs_->intervened;
  for_each_assignment(obs_->sizes, all, assignment, [&] {
    std::size_t idx = 0;
    for (int m : members) {
      idx = idx * static_cast<std::size_t>(obs_->sizes[m]) +
            static_cast<std::size_t>(assignment[m]);
    }
    table[idx] += obs_->at(assignment);
  });
  return cache_.emplace(kept, std::move(table)).first->second;
}

double MarginalCache::prob(VarSet kept, const std::vector<int>& assignment) const {
  if (kept == 0) return 1.0;
  const std::vector<double>& table = marginal(kept);
  std::size_t idx = 0;
  for (int m : set_members(kept)) {
    idx = idx * static_cast<std::size_t>(obs_->sizes[m]) +
          static_cast<std::size_t>(assignment[m]);
  }
  return table[idx];
}

double MarginalCache::cond(VarSet head, VarSet cond,
                           const std::vector<int>& assignment) const {
  double den = prob(cond, assignment);
  if (den == 0.0) return 0.0;
  return prob(head | cond, assignment) / den;
}

void TableSet::add(DistributionTable t) {
  if (t.sizes != g_->domain_sizes()) {
    throw InputError("table dimensions do not match the graph's domains");
  }
  if (!by_intervened_.emplace(t.intervened, std::move(t)).second) {
    throw InputError("duplicate table for the same intervened set");
  }
}

const DistributionTable* TableSet::find_intervened(VarSet intervened) const {
  auto it = by_intervened_.find(intervened);
  return it == by_intervened_.end() ? nullptr : &it->second;
}

const DistributionTable* TableSet::find_free(VarSet free) const {
  return find_intervened(g_->all_observed() & ~free);
}

MarginalCache* TableSet::obs_marginals() const {
  const DistributionTable* obs = observational();
  if (!obs) return nullptr;
  if (!marginals_) marginals_ = std::make_unique<MarginalCache>(obs);
  return marginals_.get();
}

std::vector<VarSet> TableSet::intervened_sets() const {
  std::vector<VarSet> out;
  for (const auto& [k, v] : by_intervened_) out.push_back(k);
  return out;
}

}  // namespace causalineq
