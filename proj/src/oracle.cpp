#include "causalineq/oracle.hpp"

#include <cmath>
#include <random>

namespace causalineq {

namespace {

std::size_t product_of(const std::vector<int>& sizes) {
  std::size_t out = 1;
  for (int s : sizes) out *= static_cast<std::size_t>(s);
  return out;
}

// Odometer over a private assignment vector for the hidden variables.
template <typename F>
void for_each_hidden(const std::vector<int>& sizes, std::vector<int>& a,
                     F&& fn) {
  std::fill(a.begin(), a.end(), 0);
  while (true) {
    fn();
    int j = static_cast<int>(sizes.size()) - 1;
    for (; j >= 0; --j) {
      if (++a[j] < sizes[j]) break;
      a[j] = 0;
    }
    if (j < 0) return;
  }
}

}  // namespace

FullModel::FullModel(CausalGraph g, const OracleConfig& cfg)
    : graph_(std::move(g)), cfg_(cfg) {
  for (int k = 0; k < graph_.hidden_count(); ++k) {
    int d = graph_.hidden(k).domain;
    hidden_sizes_.push_back(d == 0 ? cfg.default_hidden_domain : d);
  }
  cpts_.resize(graph_.observed_count());
  for (int i = 0; i < graph_.observed_count(); ++i) {
    const ObservedVar& v = graph_.observed(i);
    std::size_t cells = static_cast<std::size_t>(v.domain);
    for (int p : set_members(v.parents)) {
      cells *= static_cast<std::size_t>(graph_.observed(p).domain);
    }
    for (int k = 0; k < graph_.hidden_count(); ++k) {
      if (v.hidden_parents >> k & 1) {
        cells *= static_cast<std::size_t>(hidden_sizes_[k]);
      }
    }
    cpts_[i].assign(cells, 0.0);
  }
  priors_.resize(graph_.hidden_count());
  for (int k = 0; k < graph_.hidden_count(); ++k) {
    priors_[k].assign(hidden_sizes_[k], 0.0);
  }
}

std::size_t FullModel::cpt_index(int var,
                                 const std::vector<int>& obs_assignment,
                                 const std::vector<int>& hid_assignment,
                                 int value) const {
  const ObservedVar& v = graph_.observed(var);
  std::size_t idx = 0;
  for (int p : set_members(v.parents)) {
    idx = idx * static_cast<std::size_t>(graph_.observed(p).domain) +
          static_cast<std::size_t>(obs_assignment[p]);
  }
  for (int k = 0; k < graph_.hidden_count(); ++k) {
    if (v.hidden_parents >> k & 1) {
      idx = idx * static_cast<std::size_t>(hidden_sizes_[k]) +
            static_cast<std::size_t>(hid_assignment[k]);
    }
  }
  return idx * static_cast<std::size_t>(v.domain) +
         static_cast<std::size_t>(value);
}

double& FullModel::cpt(int var, const std::vector<int>& obs_assignment,
                       const std::vector<int>& hid_assignment, int value) {
  return cpts_[var][cpt_index(var, obs_assignment, hid_assignment, value)];
}

double FullModel::cpt(int var, const std::vector<int>& obs_assignment,
                      const std::vector<int>& hid_assignment,
                      int value) const {
  return cpts_[var][cpt_index(var, obs_assignment, hid_assignment, value)];
}

double& FullModel::prior(int hidden, int value) {
  return priors_.at(hidden).at(value);
}

double FullModel::prior(int hidden, int value) const {
  return priors_.at(hidden).at(value);
}

void FullModel::check_filled(double tol) const {
  for (int i = 0; i < graph_.observed_count(); ++i) {
    int d = graph_.observed(i).domain;
    std::size_t columns = cpts_[i].size() / static_cast<std::size_t>(d);
    for (std::size_t c = 0; c < columns; ++c) {
      double sum = 0;
      for (int v = 0; v < d; ++v) {
        sum += cpts_[i][c * static_cast<std::size_t>(d) +
                        static_cast<std::size_t>(v)];
      }
      if (std::abs(sum - 1.0) > tol) {
        throw InputError("conditional table of " + graph_.observed(i).name +
                         " has a column summing to " + std::to_string(sum));
      }
    }
  }
  for (int k = 0; k < graph_.hidden_count(); ++k) {
    double sum = 0;
    for (double p : priors_[k]) sum += p;
    if (std::abs(sum - 1.0) > tol) {
      throw InputError("prior of " + graph_.hidden(k).name + " sums to " +
                       std::to_string(sum));
    }
  }
}

FullModel FullModel::random(const CausalGraph& g, std::uint64_t seed,
                            const OracleConfig& cfg) {
  FullModel m(g, cfg);
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(cfg.concentration, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto fill_column = [&](double* base, int d) {
    double sum = 0;
    for (int v = 0; v < d; ++v) {
      double w = gamma(rng);
      if (cfg.zero_fraction > 0 && unit(rng) < cfg.zero_fraction) w = 0;
      base[v] = w;
      sum += w;
    }
    if (sum == 0) {
      // All weights were zeroed; fall back to a point mass.
      base[std::uniform_int_distribution<int>(0, d - 1)(rng)] = 1.0;
      sum = 1.0;
    }
    for (int v = 0; v < d; ++v) base[v] /= sum;
  };

  for (int i = 0; i < g.observed_count(); ++i) {
    int d = g.observed(i).domain;
    std::size_t columns = m.cpts_[i].size() / static_cast<std::size_t>(d);
    for (std::size_t c = 0; c < columns; ++c) {
      fill_column(&m.cpts_[i][c * static_cast<std::size_t>(d)], d);
    }
  }
  for (int k = 0; k < g.hidden_count(); ++k) {
    // Priors stay strictly positive so that zero cells come only from the
    // mechanisms, which keeps sparse models well defined.
    double sum = 0;
    for (int v = 0; v < m.hidden_sizes_[k]; ++v) {
      m.priors_[k][v] = gamma(rng) + 1e-3;
      sum += m.priors_[k][v];
    }
    for (int v = 0; v < m.hidden_sizes_[k]; ++v) m.priors_[k][v] /= sum;
  }
  return m;
}

double FullModel::hidden_prob(const std::vector<int>& hid_assignment) const {
  double p = 1;
  for (std::size_t k = 0; k < priors_.size(); ++k) {
    p *= priors_[k][hid_assignment[k]];
  }
  return p;
}

double FullModel::term_value(VarSet free,
                             const std::vector<int>& assignment) const {
  std::vector<int> members = set_members(free);
  std::vector<int> hid(hidden_sizes_.size(), 0);
  double total = 0;
  for_each_hidden(hidden_sizes_, hid, [&] {
    double p = hidden_prob(hid);
    for (int i : members) {
      if (p == 0) break;
      p *= cpt(i, assignment, hid, assignment[i]);
    }
    total += p;
  });
  return total;
}

DistributionTable FullModel::interventional(VarSet intervened) const {
  DistributionTable t = DistributionTable::zeros(graph_, intervened);
  if (t.values.size() > cfg_.max_cells) {
    throw CapError("interventional table would need " +
                   std::to_string(t.values.size()) + " cells (cap " +
                   std::to_string(cfg_.max_cells) + ")");
  }
  VarSet free = t.free_set();
  std::vector<int> assignment(t.sizes.size(), 0);
  for_each_assignment(t.sizes, intervened | free, assignment, [&] {
    t.at(assignment) = term_value(free, assignment);
  });
  return t;
}

std::map<VarSet, DistributionTable> FullModel::all_interventionals() const {
  const int n = graph_.observed_count();
  std::size_t cells = product_of(graph_.domain_sizes());
  if (n > 20 || (cells << n) > cfg_.max_cells) {
    throw CapError("enumerating all interventional tables would exceed the " +
                   std::to_string(cfg_.max_cells) + "-cell cap");
  }
  std::map<VarSet, DistributionTable> out;
  for_each_subset(graph_.all_observed(), [&](VarSet intervened) {
    out.emplace(intervened, interventional(intervened));
  });
  return out;
}

double FullModel::product_check(VarSet s1, VarSet s1p) const {
  if (!is_subset(s1, s1p)) {
    throw InputError("product_check needs s1 to be a subset of s1p");
  }
  std::vector<int> s1_members = set_members(s1);
  std::vector<int> rest_members = set_members(s1p & ~s1);
  std::vector<int> hid(hidden_sizes_.size(), 0);
  std::vector<int> assignment(graph_.observed_count(), 0);
  std::vector<int> sizes = graph_.domain_sizes();

  double worst = 0;
  for_each_assignment(sizes, graph_.all_observed(), assignment, [&] {
    double alternating = 0;
    for_each_subset(s1p & ~s1, [&](VarSet s2) {
      double sign = set_size(s2) % 2 == 0 ? 1.0 : -1.0;
      alternating += sign * term_value(s1 | s2, assignment);
    });
    double direct = 0;
    for_each_hidden(hidden_sizes_, hid, [&] {
      double p = hidden_prob(hid);
      for (int i : s1_members) p *= cpt(i, assignment, hid, assignment[i]);
      for (int j : rest_members) {
        p *= 1.0 - cpt(j, assignment, hid, assignment[j]);
      }
      direct += p;
    });
    worst = std::max(worst, std::abs(alternating - direct));
  });
  return worst;
}

}  // namespace causalineq
