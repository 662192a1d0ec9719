#pragma once

#include <iosfwd>
#include <string>

#include "causalineq/graph.hpp"
#include "causalineq/table.hpp"

namespace causalineq {

// Line-oriented graph description; `#` starts a comment. Directives:
//   observed NAME SIZE
//   hidden NAME [SIZE]
//   edge PARENT CHILD
//   bidir A B
// The parsed graph is validated; problems raise InputError with `origin` and
// the line number.
CausalGraph parse_graph(std::istream& in, const std::string& origin);
CausalGraph read_graph_file(const std::string& path);

// Distribution file for a known graph:
//   intervened NAME... | -
//   vars NAME...            (every observed variable exactly once)
//   values NUMBER...        (may continue over any number of lines)
// Values are row-major over the full space in the `vars` order, last listed
// variable fastest; the cell at an assignment is the probability of the free
// values when the intervened variables are held at theirs.
DistributionTable parse_distribution(const CausalGraph& g, std::istream& in,
                                     const std::string& origin);
DistributionTable read_distribution_file(const CausalGraph& g,
                                         const std::string& path);

// Writes the same format (declaration order, full round-trip precision).
void write_distribution(std::ostream& out, const CausalGraph& g,
                        const DistributionTable& t);

// Comma-separated observed names for command-line arguments; "-" (or "obs",
// any case) is the empty set, meaning the observational distribution.
VarSet parse_var_set(const CausalGraph& g, const std::string& spec);
std::string var_set_spec(const CausalGraph& g, VarSet s);

}  // namespace causalineq
