#include "causalineq/equality.hpp"

#include <map>

#include "causalineq/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace causalineq;
using testsupport::chain5_graph;
using testsupport::instrument_graph;
using testsupport::vs;

namespace {

std::map<std::string, const EqualityConstraint*> by_id(
    const std::vector<EqualityConstraint>& eqs) {
  std::map<std::string, const EqualityConstraint*> out;
  for (const auto& e : eqs) out[e.id] = &e;
  return out;
}

std::string golden(const OrderedGraph& og, const EqualityConstraint& e) {
  return display_expr(og, e.lhs) + " = " + display_expr(og, e.rhs);
}

// Every emitted equality must hold numerically in a fully specified model,
// with lhs read from the exact interventional table and rhs evaluated from
// whatever tables its formula references.
void check_numerically(const CausalGraph& g, const OrderedGraph& og,
                       const std::vector<EqualityConstraint>& eqs,
                       std::uint64_t seed) {
  FullModel m = FullModel::random(g, seed);
  TableSet tables(&g);
  for (auto& [intervened, table] : m.all_interventionals()) {
    tables.add(std::move(table));
  }
  EvalContext ctx(og, tables);
  std::vector<int> a(g.observed_count(), 0);
  for (const auto& e : eqs) {
    double worst = 0;
    for_each_assignment(ctx.sizes, g.all_observed(), a, [&] {
      double diff = eval_expr(e.lhs, ctx, a) - eval_expr(e.rhs, ctx, a);
      worst = std::max(worst, std::abs(diff));
    });
    INFO("equality ", e.id, " worst residual ", worst);
    CHECK(worst <= 1e-9);
  }
}

}  // namespace

TEST_CASE("component factor blocks") {
  CausalGraph g = chain5_graph();
  CHECK(component_factors(g, vs(g, {"X", "W2"})) ==
        std::vector<VarSet>{vs(g, {"X"}), vs(g, {"W2"})});
  CHECK(component_factors(g, vs(g, {"X", "Z"})) ==
        std::vector<VarSet>{vs(g, {"X", "Z"})});
  CHECK(component_factors(g, g.all_observed()) ==
        std::vector<VarSet>{vs(g, {"W1", "W2"}), vs(g, {"X", "Y", "Z"})});
}

TEST_CASE("chain formulas and telescoping sums") {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);

  ExprPtr chain = component_chain_formula(og, vs(g, {"X", "Y", "Z"}));
  CHECK(display_expr(og, chain) == "P(z|w1,x,w2,y) P(y|w1,x,w2) P(x|w1)");

  CHECK(display_expr(og, sum_out_factor(og, chain, vs(g, {"Z"}))) ==
        "P(y|w1,x,w2) P(x|w1)");
  CHECK(display_expr(og, sum_out_factor(og, chain, vs(g, {"Y", "Z"}))) ==
        "P(x|w1)");

  // W1 sits in the conditioning set of the W2 factor, so it cannot
  // telescope; the sum stays explicit.
  ExprPtr pair_chain = component_chain_formula(og, vs(g, {"W1", "W2"}));
  CHECK(display_expr(og, pair_chain) == "P(w2|w1,x) P(w1)");
  CHECK(display_expr(og, sum_out_factor(og, pair_chain, vs(g, {"W1"}))) ==
        "Σ_{w1} P(w2|w1,x) P(w1)");
  CHECK(display_expr(og, sum_out_factor(og, pair_chain, vs(g, {"W2"}))) ==
        "P(w1)");
}

TEST_CASE("block factors collapse on chain input") {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);
  // {X} and {W2} are separate blocks of the subgraph over {X,W2}.
  ExprPtr joint = make_product(
      {make_conditional(vs(g, {"X"}), vs(g, {"W1"})),
       make_conditional(vs(g, {"W2"}), vs(g, {"W1", "X"}))});
  CHECK(display_expr(og, block_factor_from(og, joint, vs(g, {"X", "W2"}),
                                           vs(g, {"X"}))) == "P(x|w1)");
  CHECK(display_expr(og, block_factor_from(og, joint, vs(g, {"X", "W2"}),
                                           vs(g, {"W2"}))) == "P(w2|w1,x)");
}

TEST_CASE("identified closure for the instrument graph") {
  CausalGraph g = instrument_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);

  CHECK(closure.identified(vs(g, {"Z"})));
  CHECK(closure.identified(vs(g, {"X"})));
  CHECK(closure.identified(vs(g, {"X", "Y"})));
  CHECK(!closure.identified(vs(g, {"Y"})));
  CHECK(closure.identified(vs(g, {"Z", "X"})));       // composite product
  CHECK(closure.identified(g.all_observed()));
  CHECK(!closure.identified(vs(g, {"Z", "Y"})));

  CHECK(canonical_key(closure.formula(vs(g, {"X", "Y"}))) ==
        canonical_key(make_conditional(vs(g, {"X", "Y"}), vs(g, {"Z"}))));
  CHECK(display_expr(og, closure.formula(vs(g, {"X"}))) == "P(x|z)");
}

TEST_CASE("identified closure for the chain5 graph") {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);

  for (auto names : {std::vector<const char*>{"X"},
                     std::vector<const char*>{"X", "Y"},
                     std::vector<const char*>{"X", "Y", "Z"},
                     std::vector<const char*>{"W1"},
                     std::vector<const char*>{"W2"},
                     std::vector<const char*>{"W1", "W2"}}) {
    VarSet s = 0;
    for (auto n : names) s |= var_bit(g.require_observed(n));
    INFO("set {", set_names(g, s), "}");
    CHECK(closure.identified(s));
  }
  for (auto names : {std::vector<const char*>{"Y"},
                     std::vector<const char*>{"Z"},
                     std::vector<const char*>{"X", "Z"},
                     std::vector<const char*>{"Y", "Z"}}) {
    VarSet s = 0;
    for (auto n : names) s |= var_bit(g.require_observed(n));
    INFO("set {", set_names(g, s), "}");
    CHECK(!closure.identified(s));
  }

  CHECK(display_expr(og, closure.formula(vs(g, {"W2"}))) ==
        "Σ_{w1} P(w2|w1,x) P(w1)");
  CHECK(display_expr(og, closure.formula(vs(g, {"X", "Y"}))) ==
        "P(y|w1,x,w2) P(x|w1)");
  // Composite across components: the product of the block factors, not a
  // naive chain. Confounding with W1 makes P(w2|w1,x) wrong here; the W2
  // block keeps its mixture form.
  CHECK(closure.identified(vs(g, {"X", "W2"})));
  ExprPtr composite = closure.formula(vs(g, {"X", "W2"}));
  CHECK(canonical_key(composite) ==
        canonical_key(make_product(
            {make_sum(vs(g, {"W1"}),
                      make_product(
                          {make_conditional(vs(g, {"W1"}), 0),
                           make_conditional(vs(g, {"W2"}), vs(g, {"W1", "X"}))})),
             make_conditional(vs(g, {"X"}), vs(g, {"W1"}))})));

  // And it must match the oracle's table for that factor cell by cell.
  FullModel m = FullModel::random(g, 1234);
  TableSet tables(&g);
  tables.add(m.interventional(0));
  DistributionTable direct = m.interventional(vs(g, {"W1", "Y", "Z"}));
  EvalContext ctx(og, tables);
  std::vector<int> a(5, 0);
  double worst = 0;
  for_each_assignment(ctx.sizes, g.all_observed(), a, [&] {
    worst = std::max(worst,
                     std::abs(eval_expr(composite, ctx, a) - direct.at(a)));
  });
  CHECK(worst <= 1e-9);
}

TEST_CASE("oversized c-components are rejected with a diagnostic") {
  CausalGraph g;
  g.add_hidden("U");
  for (int i = 0; i < 11; ++i) {
    g.add_observed("V" + std::to_string(i), 2);
    g.add_edge("U", "V" + std::to_string(i));
  }
  OrderedGraph og = make_ordered(g);
  try {
    IdentifiedClosure closure(og);
    FAIL("expected CapError");
  } catch (const CapError& e) {
    std::string msg = e.what();
    CHECK(msg.find("11") != std::string::npos);
    CHECK(msg.find("10") != std::string::npos);
    CHECK(msg.find("V0") != std::string::npos);
  }
}

TEST_CASE("equality battery for the instrument graph") {
  CausalGraph g = instrument_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);
  auto eqs = enumerate_equalities(og, closure);

  REQUIRE(eqs.size() == 5);
  auto ids = by_id(eqs);
  CHECK(golden(og, *ids.at("eq:z")) == "P_{x,y}(z) = P(z)");
  CHECK(golden(og, *ids.at("eq:x")) == "P_{z,y}(x) = P(x|z)");
  CHECK(golden(og, *ids.at("eq:y")) == "P_{z,x}(y) = P_{x}(y)");
  CHECK(golden(og, *ids.at("eq:x,y")) == "P_{z}(x,y) = P(x,y|z)");
  CHECK(golden(og, *ids.at("eq:joint")) == "P(z,x,y) = P_{z}(x,y) P(z)");

  CHECK(ids.at("eq:x,y")->identified);
  CHECK(!ids.at("eq:y")->identified);
  CHECK(canonical_key(ids.at("eq:x,y")->rhs) ==
        canonical_key(make_conditional(vs(g, {"X", "Y"}), vs(g, {"Z"}))));

  check_numerically(g, og, eqs, 401);

  // Same battery over ternary domains.
  CausalGraph g3 = instrument_graph(3);
  OrderedGraph og3 = make_ordered(g3);
  IdentifiedClosure closure3(og3);
  check_numerically(g3, og3, enumerate_equalities(og3, closure3), 402);
}

TEST_CASE("equality battery for the chain5 graph") {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);
  auto eqs = enumerate_equalities(og, closure);

  REQUIRE(eqs.size() == 11);
  auto ids = by_id(eqs);
  CHECK(golden(og, *ids.at("eq:w1")) == "P_{x,w2,y,z}(w1) = P(w1)");
  CHECK(golden(og, *ids.at("eq:w2")) ==
        "P_{w1,x,y,z}(w2) = Σ_{w1} P(w2|w1,x) P(w1)");
  CHECK(golden(og, *ids.at("eq:w1,w2")) ==
        "P_{x,y,z}(w1,w2) = P(w2|w1,x) P(w1)");
  CHECK(golden(og, *ids.at("eq:x")) == "P_{w1,w2,y,z}(x) = P(x|w1)");
  CHECK(golden(og, *ids.at("eq:y")) == "P_{w1,x,w2,z}(y) = P_{x,w2}(y)");
  CHECK(golden(og, *ids.at("eq:z")) == "P_{w1,x,w2,y}(z) = P_{y}(z)");
  CHECK(golden(og, *ids.at("eq:x,y")) ==
        "P_{w1,w2,z}(x,y) = P(y|w1,x,w2) P(x|w1)");
  CHECK(golden(og, *ids.at("eq:x,z")) == "P_{w1,w2,y}(x,z) = P_{w1,y}(x,z)");
  CHECK(golden(og, *ids.at("eq:y,z")) == "P_{w1,x,w2}(y,z) = P_{x,w2}(y,z)");
  CHECK(golden(og, *ids.at("eq:x,y,z")) ==
        "P_{w1,w2}(x,y,z) = P(z|w1,x,w2,y) P(y|w1,x,w2) P(x|w1)");
  CHECK(golden(og, *ids.at("eq:joint")) ==
        "P(w1,x,w2,y,z) = P_{w1,w2}(x,y,z) P_{x}(w1,w2)");

  CHECK(!ids.at("eq:x,z")->identified);
  CHECK(ids.at("eq:x,y,z")->identified);

  check_numerically(g, og, eqs, 77);
  check_numerically(g, og, eqs, 78);
}

TEST_CASE("full enumeration adds cross-component products") {
  CausalGraph g = instrument_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);
  EqualityOptions opts;
  opts.full_enumeration = true;
  auto eqs = enumerate_equalities(og, closure, opts);

  // 4 per-component equalities, cross products for {Z,X} and {Z,Y}, and the
  // joint decomposition; the full-set product is the decomposition itself.
  REQUIRE(eqs.size() == 7);
  auto ids = by_id(eqs);
  CHECK(golden(og, *ids.at("eq:z,x")) == "P_{y}(z,x) = P_{z}(x) P(z)");
  CHECK(golden(og, *ids.at("eq:z,y")) == "P_{x}(z,y) = P_{x}(y) P(z)");
  check_numerically(g, og, eqs, 9001);
}
