#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalineq/types.hpp"

namespace causalineq {

struct ObservedVar {
  std::string name;
  int domain = 2;
  VarSet parents = 0;                 // observed parents
  std::uint64_t hidden_parents = 0;   // bitmask over hidden indices
};

struct HiddenVar {
  std::string name;
  int domain = 0;   // 0 means unspecified; samplers substitute a default
  VarSet children = 0;
};

// A causal diagram over discrete variables in which every hidden variable is
// a root. Observed variables get indices in declaration order; that order is
// also the tie-break used by the canonical topological sort.
class CausalGraph {
 public:
  int add_observed(const std::string& name, int domain);
  int add_hidden(const std::string& name, int domain = 0);
  void add_edge(const std::string& parent, const std::string& child);
  // Convenience for a latent common cause of exactly two observed variables:
  // introduces a fresh hidden root with those two children.
  void add_bidirected(const std::string& a, const std::string& b);

  int observed_count() const { return static_cast<int>(observed_.size()); }
  int hidden_count() const { return static_cast<int>(hidden_.size()); }
  const ObservedVar& observed(int i) const { return observed_.at(i); }
  const HiddenVar& hidden(int k) const { return hidden_.at(k); }
  std::optional<int> observed_index(const std::string& name) const;
  std::optional<int> hidden_index(const std::string& name) const;
  // Like observed_index but throws InputError naming the unknown variable.
  int require_observed(const std::string& name) const;

  VarSet all_observed() const;
  VarSet parents_of(VarSet s) const;
  VarSet external_parents(VarSet s) const { return parents_of(s) & ~s; }
  std::vector<int> domain_sizes() const;

 private:
  void check_fresh_name(const std::string& name) const;

  std::vector<ObservedVar> observed_;
  std::vector<HiddenVar> hidden_;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Structural checks for input graphs: nonempty, acyclic, observed domains of
// size at least two, and every hidden variable with at least two observed
// children. Induced subgraphs are exempt from the last rule and should not be
// re-validated.
ValidationReport validate(const CausalGraph& g);

// Kahn's algorithm with smallest-index tie-break; throws InputError on cycles.
std::vector<int> canonical_topological_order(const CausalGraph& g);
// Throws InputError unless `order` is a topological permutation of the
// observed indices.
void check_topological_order(const CausalGraph& g,
                             const std::vector<int>& order);

// Reflexive ancestor closure of `of` through observed edges, with both the
// sources and the traversal restricted to `domain`.
VarSet observed_ancestors_within(const CausalGraph& g, VarSet domain,
                                 VarSet of);

// Partition of `domain` into c-components: blocks connected through hidden
// common causes (a hidden variable links the members of children∩domain).
// Blocks are listed by their smallest member index.
std::vector<VarSet> c_components_within(const CausalGraph& g, VarSet domain);
std::vector<VarSet> c_components(const CausalGraph& g);

// Subgraph over `keep`: retains the hidden variables with at least one child
// in `keep` and restricts all edges. The result may legitimately contain
// hidden variables with a single child.
CausalGraph induced_subgraph(const CausalGraph& g, VarSet keep);

// Graph plus a fixed topological order of the observed variables; everything
// derived downstream (factorizations, displays, enumeration order) is stated
// relative to this order. Holds a non-owning pointer: keep the graph alive.
struct OrderedGraph {
  const CausalGraph* graph = nullptr;
  std::vector<int> order;
  std::vector<int> position;   // position[var] = rank in `order`

  const CausalGraph& g() const { return *graph; }
  // Strict predecessors of `var` in the order, as a mask.
  VarSet predecessors(int var) const;
};

OrderedGraph make_ordered(const CausalGraph& g);
OrderedGraph make_ordered(const CausalGraph& g, const std::vector<int>& order);

// Members joined by `sep` in ascending index order (diagnostics).
std::string set_names(const CausalGraph& g, VarSet s,
                      const std::string& sep = ",");
// Members joined in topological-position order (displays).
std::string set_names_ordered(const OrderedGraph& og, VarSet s,
                              const std::string& sep = ",");
// Size-then-lexicographic (by sorted member names) comparison used wherever
// "enumerate subsets small to large" appears.
bool canonical_set_less(const CausalGraph& g, VarSet a, VarSet b);

}  // namespace causalineq
