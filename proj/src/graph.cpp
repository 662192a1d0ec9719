#include "causalineq/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace causalineq {

std::vector<int> set_members(VarSet s) {
  std::vector<int> out;
  for (int i = 0; s >> i; ++i) {
    if (contains(s, i)) out.push_back(i);
  }
  return out;
}

void CausalGraph::check_fresh_name(const std::string& name) const {
  if (name.empty()) throw InputError("variable name may not be empty");
  if (observed_index(name) || hidden_index(name)) {
    throw InputError("duplicate variable name: " + name);
  }
}

int CausalGraph::add_observed(const std::string& name, int domain) {
  check_fresh_name(name);
  if (domain < 2) {
    throw InputError("observed variable " + name +
                     " needs a domain of size at least 2");
  }
  if (observed_.size() >= 64) {
    throw InputError("at most 64 observed variables are supported");
  }
  observed_.push_back({name, domain, 0, 0});
  return static_cast<int>(observed_.size()) - 1;
}

int CausalGraph::add_hidden(const std::string& name, int domain) {
  check_fresh_name(name);
  if (domain != 0 && domain < 2) {
    throw InputError("hidden variable " + name +
                     " needs a domain of size at least 2");
  }
  if (hidden_.size() >= 64) {
    throw InputError("at most 64 hidden variables are supported");
  }
  hidden_.push_back({name, domain, 0});
  return static_cast<int>(hidden_.size()) - 1;
}

void CausalGraph::add_edge(const std::string& parent, const std::string& child) {
  auto child_idx = observed_index(child);
  if (!child_idx) {
    if (hidden_index(child)) {
      throw InputError("hidden variable " + child +
                       " cannot have incoming edges");
    }
    throw InputError("unknown variable: " + child);
  }
  if (auto p = observed_index(parent)) {
    if (*p == *child_idx) throw InputError("self edge on " + parent);
    ObservedVar& c = observed_[*child_idx];
    if (contains(c.parents, *p)) {
      throw InputError("duplicate edge " + parent + " -> " + child);
    }
    c.parents |= var_bit(*p);
  } else if (auto h = hidden_index(parent)) {
    HiddenVar& hv = hidden_[*h];
    if (contains(hv.children, *child_idx)) {
      throw InputError("duplicate edge " + parent + " -> " + child);
    }
    hv.children |= var_bit(*child_idx);
    observed_[*child_idx].hidden_parents |= std::uint64_t{1} << *h;
  } else {
    throw InputError("unknown variable: " + parent);
  }
}

void CausalGraph::add_bidirected(const std::string& a, const std::string& b) {
  if (!observed_index(a)) throw InputError("unknown variable: " + a);
  if (!observed_index(b)) throw InputError("unknown variable: " + b);
  if (a == b) throw InputError("bidirected edge needs two distinct variables");
  std::string base = "u_" + a + "_" + b;
  std::string name = base;
  for (int suffix = 2; observed_index(name) || hidden_index(name); ++suffix) {
    name = base + "_" + std::to_string(suffix);
  }
  add_hidden(name);
  add_edge(name, a);
  add_edge(name, b);
}

std::optional<int> CausalGraph::observed_index(const std::string& name) const {
  for (std::size_t i = 0; i < observed_.size(); ++i) {
    if (observed_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> CausalGraph::hidden_index(const std::string& name) const {
  for (std::size_t k = 0; k < hidden_.size(); ++k) {
    if (hidden_[k].name == name) return static_cast<int>(k);
  }
  return std::nullopt;
}

int CausalGraph::require_observed(const std::string& name) const {
  if (auto i = observed_index(name)) return *i;
  throw InputError("unknown observed variable: " + name);
}

VarSet CausalGraph::all_observed() const {
  if (observed_.empty()) return 0;
  if (observed_.size() == 64) return ~VarSet{0};
  return (VarSet{1} << observed_.size()) - 1;
}

VarSet CausalGraph::parents_of(VarSet s) const {
  VarSet out = 0;
  for (int i : set_members(s)) out |= observed_[i].parents;
  return out;
}

std::vector<int> CausalGraph::domain_sizes() const {
  std::vector<int> out;
  out.reserve(observed_.size());
  for (const auto& v : observed_) out.push_back(v.domain);
  return out;
}

ValidationReport validate(const CausalGraph& g) {
  ValidationReport report;
  if (g.observed_count() == 0) {
    report.problems.push_back("graph has no observed variables");
    return report;
  }
  for (int k = 0; k < g.hidden_count(); ++k) {
    const HiddenVar& h = g.hidden(k);
    if (set_size(h.children) < 2) {
      report.problems.push_back(
          "hidden variable " + h.name + " has " +
          std::to_string(set_size(h.children)) +
          " observed child(ren); hidden variables must have at least 2");
    }
  }
  try {
    canonical_topological_order(g);
  } catch (const InputError& e) {
    report.problems.push_back(e.what());
  }
  return report;
}

std::vector<int> canonical_topological_order(const CausalGraph& g) {
  const int n = g.observed_count();
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i) indegree[i] = set_size(g.observed(i).parents);

  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c = 0; c < n; ++c) {
      if (contains(g.observed(c).parents, v) && --indegree[c] == 0) {
        ready.push(c);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw InputError("directed edges among observed variables form a cycle");
  }
  return order;
}

void check_topological_order(const CausalGraph& g,
                             const std::vector<int>& order) {
  const int n = g.observed_count();
  if (static_cast<int>(order.size()) != n) {
    throw InputError("order must list every observed variable exactly once");
  }
  std::vector<int> position(n, -1);
  for (int p = 0; p < n; ++p) {
    int v = order[p];
    if (v < 0 || v >= n || position[v] != -1) {
      throw InputError("order must list every observed variable exactly once");
    }
    position[v] = p;
  }
  for (int v = 0; v < n; ++v) {
    for (int p : set_members(g.observed(v).parents)) {
      if (position[p] > position[v]) {
        throw InputError("order is not topological: " + g.observed(p).name +
                         " -> " + g.observed(v).name + " runs backwards");
      }
    }
  }
}

VarSet observed_ancestors_within(const CausalGraph& g, VarSet domain,
                                 VarSet of) {
  VarSet reach = of & domain;
  while (true) {
    VarSet next = reach | (g.parents_of(reach) & domain);
    if (next == reach) return reach;
    reach = next;
  }
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<VarSet> c_components_within(const CausalGraph& g, VarSet domain) {
  const int n = g.observed_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  for (int k = 0; k < g.hidden_count(); ++k) {
    std::vector<int> members = set_members(g.hidden(k).children & domain);
    for (std::size_t j = 1; j < members.size(); ++j) {
      parent[find_root(parent, members[j])] = find_root(parent, members[0]);
    }
  }
  std::vector<VarSet> block_of(n, 0);
  for (int i : set_members(domain)) block_of[find_root(parent, i)] |= var_bit(i);
  std::vector<VarSet> out;
  for (int i = 0; i < n; ++i) {
    if (block_of[i]) out.push_back(block_of[i]);
  }
  // find_root returns an arbitrary member as representative, so re-sort by
  // each block's actual smallest member.
  std::sort(out.begin(), out.end(), [](VarSet a, VarSet b) {
    return std::countr_zero(a) < std::countr_zero(b);
  });
  return out;
}

std::vector<VarSet> c_components(const CausalGraph& g) {
  return c_components_within(g, g.all_observed());
}

CausalGraph induced_subgraph(const CausalGraph& g, VarSet keep) {
  CausalGraph out;
  for (int i : set_members(keep)) {
    out.add_observed(g.observed(i).name, g.observed(i).domain);
  }
  for (int k = 0; k < g.hidden_count(); ++k) {
    if ((g.hidden(k).children & keep) == 0) continue;
    out.add_hidden(g.hidden(k).name, g.hidden(k).domain);
    for (int c : set_members(g.hidden(k).children & keep)) {
      out.add_edge(g.hidden(k).name, g.observed(c).name);
    }
  }
  for (int i : set_members(keep)) {
    for (int p : set_members(g.observed(i).parents & keep)) {
      out.add_edge(g.observed(p).name, g.observed(i).name);
    }
  }
  return out;
}

VarSet OrderedGraph::predecessors(int var) const {
  VarSet out = 0;
  for (int p = 0; p < position[var]; ++p) out |= var_bit(order[p]);
  return out;
}

OrderedGraph make_ordered(const CausalGraph& g) {
  return make_ordered(g, canonical_topological_order(g));
}

OrderedGraph make_ordered(const CausalGraph& g, const std::vector<int>& order) {
  check_topological_order(g, order);
  OrderedGraph og;
  og.graph = &g;
  og.order = order;
  og.position.assign(order.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) {
    og.position[order[p]] = static_cast<int>(p);
  }
  return og;
}

std::string set_names(const CausalGraph& g, VarSet s, const std::string& sep) {
  std::string out;
  for (int i : set_members(s)) {
    if (!out.empty()) out += sep;
    out += g.observed(i).name;
  }
  return out;
}

std::string set_names_ordered(const OrderedGraph& og, VarSet s,
                              const std::string& sep) {
  std::vector<int> members = set_members(s);
  std::sort(members.begin(), members.end(), [&](int a, int b) {
    return og.position[a] < og.position[b];
  });
  std::string out;
  for (int i : members) {
    if (!out.empty()) out += sep;
    out += og.g().observed(i).name;
  }
  return out;
}

bool canonical_set_less(const CausalGraph& g, VarSet a, VarSet b) {
  if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
  auto names = [&](VarSet s) {
    std::vector<std::string> out;
    for (int i : set_members(s)) out.push_back(g.observed(i).name);
    std::sort(out.begin(), out.end());
    return out;
  };
  return names(a) < names(b);
}

}  // namespace causalineq
