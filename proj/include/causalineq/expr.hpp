#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "causalineq/graph.hpp"
#include "causalineq/table.hpp"

namespace causalineq {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable symbolic probability expression. Conditionals refer to the
// observational joint; term nodes refer to an interventional distribution by
// its free (non-intervened) set, with a possibly reduced subscript recording
// which intervened variables the value actually depends on.
class Expr {
 public:
  enum class Kind { constant, conditional, term, product, sum, ratio };

  Kind kind;
  double value = 0;        // constant
  VarSet head = 0;         // conditional
  VarSet cond = 0;         // conditional
  VarSet term_free = 0;    // term
  VarSet signature = 0;    // term: displayed intervened subscript
  VarSet sum_vars = 0;     // sum
  std::vector<ExprPtr> kids;  // product children; sum child; ratio num, den

  explicit Expr(Kind k) : kind(k) {}
};

ExprPtr make_const(double v);
ExprPtr make_conditional(VarSet head, VarSet cond);
ExprPtr make_term(VarSet free, VarSet signature);
// Flattens nested products and folds constants.
ExprPtr make_product(std::vector<ExprPtr> kids);
// Merges nested sums; an empty variable set returns the child unchanged.
ExprPtr make_sum(VarSet vars, ExprPtr child);
ExprPtr make_ratio(ExprPtr num, ExprPtr den);

// Observed variables the value can depend on.
VarSet expr_dependencies(const ExprPtr& e);

struct EvalContext {
  const OrderedGraph* og = nullptr;
  const TableSet* tables = nullptr;
  std::vector<int> sizes;
  // Set when a conditional or ratio hit a zero denominator (resolved as 0).
  bool zero_denominator = false;

  EvalContext(const OrderedGraph& og_, const TableSet& tables_)
      : og(&og_), tables(&tables_), sizes(og_.g().domain_sizes()) {}
};

// Evaluates at `assignment` (mutated and restored across sum nodes). Throws
// InputError when a table the expression needs is absent.
double eval_expr(const ExprPtr& e, EvalContext& ctx,
                 std::vector<int>& assignment);

// Division-free evaluation as a (numerator, denominator) pair when the
// expression is built from atoms, products and ratios only. Lets equality
// checks cross-multiply instead of dividing, which stays exact on degenerate
// support. Sum nodes have no such form; returns nullopt.
std::optional<std::pair<double, double>> eval_cleared(
    const ExprPtr& e, EvalContext& ctx, std::vector<int>& assignment);

// Rendering: lowercase value symbols, conditionals as P(y|x,z), terms as
// P_{w1,y}(x,z), chain products shown latest-variable first.
std::string display_expr(const OrderedGraph& og, const ExprPtr& e);

// Normal form for deduplication and golden comparisons: conditionals are
// split into joint-marginal numerator/denominator multisets, common factors
// cancelled, everything sorted. Two chain factorizations of the same
// distribution get equal keys.
std::string canonical_key(const ExprPtr& e);

}  // namespace causalineq
