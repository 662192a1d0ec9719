#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "causalineq/graph.hpp"
#include "causalineq/table.hpp"

namespace causalineq {

struct OracleConfig {
  int default_hidden_domain = 4;
  // Dirichlet concentration for sampled conditional columns.
  double concentration = 1.0;
  // Fraction of conditional-table weights forced to exactly zero, to exercise
  // degenerate-support behavior. At least one weight per column survives.
  double zero_fraction = 0.0;
  std::size_t max_cells = 10'000'000;
};

// A complete parameterization of a causal diagram, hidden variables included.
// Everything it reports is computed by brute-force summation straight from
// the defining factorization, with no reuse of the constraint machinery, so
// its tables can serve as an independent reference.
class FullModel {
 public:
  // Zero-initialized conditional tables; fill via cpt() / prior() and then
  // check_filled(). Hidden variables with unspecified domain get
  // cfg.default_hidden_domain.
  FullModel(CausalGraph g, const OracleConfig& cfg = {});

  static FullModel random(const CausalGraph& g, std::uint64_t seed,
                          const OracleConfig& cfg = {});

  const CausalGraph& graph() const { return graph_; }
  const std::vector<int>& hidden_sizes() const { return hidden_sizes_; }

  // Conditional probability of observed variable `var` taking `value`, given
  // the parent coordinates read from the two full assignment vectors.
  double& cpt(int var, const std::vector<int>& obs_assignment,
              const std::vector<int>& hid_assignment, int value);
  double cpt(int var, const std::vector<int>& obs_assignment,
             const std::vector<int>& hid_assignment, int value) const;
  double& prior(int hidden, int value);
  double prior(int hidden, int value) const;

  // Throws InputError if any conditional column or prior does not sum to 1
  // within `tol`.
  void check_filled(double tol = 1e-9) const;

  // P_{intervened}(free values | intervened values), dense over the full
  // space: each cell multiplies the conditional factors of the free variables
  // and sums out the hidden ones.
  DistributionTable interventional(VarSet intervened) const;
  // Every interventional distribution, keyed by intervened set. Guarded by
  // cfg.max_cells.
  std::map<VarSet, DistributionTable> all_interventionals() const;

  // Single cell of P_{V \ free}(assignment): the product of the free
  // variables' conditional factors, hidden variables summed out.
  double term_value(VarSet free, const std::vector<int>& assignment) const;

  // For the alternating-sign inequality with inner set s1 and outer set s1p,
  // compares its term-by-term value against the direct latent-sum form
  // (factors of s1, complemented factors of s1p \ s1) and returns the largest
  // absolute discrepancy over all assignments. Near zero for a correct model.
  double product_check(VarSet s1, VarSet s1p) const;

 private:
  std::size_t cpt_index(int var, const std::vector<int>& obs_assignment,
                        const std::vector<int>& hid_assignment,
                        int value) const;
  double hidden_prob(const std::vector<int>& hid_assignment) const;

  CausalGraph graph_;
  OracleConfig cfg_;
  std::vector<int> hidden_sizes_;
  std::vector<std::vector<double>> cpts_;
  std::vector<std::vector<double>> priors_;
};

}  // namespace causalineq
