#include <cmath>

#include "causalineq/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace causalineq;
using testsupport::chain5_graph;
using testsupport::instrument_graph;
using testsupport::instrument_hand_model;
using testsupport::vs;

TEST_CASE("hand model reproduces hand-computed distributions") {
  FullModel m = instrument_hand_model();
  const CausalGraph& g = m.graph();

  DistributionTable obs = m.interventional(0);
  CHECK_NOTHROW(check_normalization(obs, 1e-12));
  // P(z,x,y) = P(z) * sum_u P(u) P(x|z,u) P(y|x,u), by hand:
  CHECK(obs.at({1, 1, 1}) == doctest::Approx(0.0864).epsilon(1e-12));
  CHECK(obs.at({0, 0, 0}) == doctest::Approx(0.3108).epsilon(1e-12));

  DistributionTable do_x = m.interventional(vs(g, {"X"}));
  CHECK_NOTHROW(check_normalization(do_x, 1e-12));
  // P_x1(z, y=1) = P(z) * (0.6*0.5 + 0.4*0.6) = P(z) * 0.54
  CHECK(do_x.at({0, 1, 1}) == doctest::Approx(0.378).epsilon(1e-12));
  CHECK(do_x.at({1, 1, 1}) == doctest::Approx(0.162).epsilon(1e-12));

  DistributionTable do_z = m.interventional(vs(g, {"Z"}));
  CHECK_NOTHROW(check_normalization(do_z, 1e-12));
  // P_z1(x=1, y=1) = 0.6*0.8*0.5 + 0.4*0.2*0.6
  CHECK(do_z.at({1, 1, 1}) == doctest::Approx(0.288).epsilon(1e-12));
}

TEST_CASE("term values match interventional tables cell by cell") {
  FullModel m = instrument_hand_model();
  const CausalGraph& g = m.graph();
  for (VarSet free : {vs(g, {"X", "Y"}), vs(g, {"Y"}), vs(g, {"Z"}),
                      g.all_observed(), VarSet{0}}) {
    DistributionTable t = m.interventional(g.all_observed() & ~free);
    std::vector<int> a(3, 0);
    for_each_assignment(t.sizes, g.all_observed(), a, [&] {
      CHECK(m.term_value(free, a) == doctest::Approx(t.at(a)).epsilon(1e-12));
    });
  }
  std::vector<int> a = {1, 1, 1};
  CHECK(m.term_value(0, a) == doctest::Approx(1.0).epsilon(1e-12));
  // Q[{Y}] at x=1 and Q[{X,Y}] at (z=1,x=1,y=1), by hand.
  CHECK(m.term_value(vs(g, {"Y"}), a) == doctest::Approx(0.54).epsilon(1e-12));
  CHECK(m.term_value(vs(g, {"X", "Y"}), a) ==
        doctest::Approx(0.288).epsilon(1e-12));
}

TEST_CASE("alternating-sign sums equal the complemented-factor latent sum") {
  FullModel m = instrument_hand_model();
  const CausalGraph& g = m.graph();
  VarSet x = vs(g, {"X"}), y = vs(g, {"Y"}), xy = vs(g, {"X", "Y"});

  // By hand at (z=1,x=1,y=1): Q[{Y}] - Q[{X,Y}] = 0.54 - 0.288, and the
  // latent form sum_u P(u)(1-P(x=1|z=1,u))P(y=1|x=1,u) = 0.06 + 0.192.
  std::vector<int> a = {1, 1, 1};
  double alt = m.term_value(y, a) - m.term_value(xy, a);
  CHECK(alt == doctest::Approx(0.252).epsilon(1e-12));

  CHECK(m.product_check(y, xy) < 1e-12);
  CHECK(m.product_check(0, x) < 1e-12);
  CHECK(m.product_check(0, xy) < 1e-12);
  CHECK(m.product_check(x, g.all_observed()) < 1e-12);
  CHECK_THROWS_AS(m.product_check(xy, y), InputError);
}

TEST_CASE("random models are coherent and reproducible") {
  CausalGraph g = chain5_graph();
  FullModel m1 = FullModel::random(g, 17);
  FullModel m2 = FullModel::random(g, 17);
  FullModel m3 = FullModel::random(g, 18);
  CHECK_NOTHROW(m1.check_filled(1e-12));

  DistributionTable t1 = m1.interventional(0);
  DistributionTable t2 = m2.interventional(0);
  DistributionTable t3 = m3.interventional(0);
  CHECK(t1.values == t2.values);
  CHECK(t1.values != t3.values);
  CHECK_NOTHROW(check_normalization(t1, 1e-9));

  auto all = m1.all_interventionals();
  CHECK(all.size() == 32);
  for (auto& [intervened, table] : all) {
    CHECK_NOTHROW(check_normalization(table, 1e-9));
  }
}

TEST_CASE("sparse models keep columns normalized") {
  CausalGraph g = instrument_graph(3);
  OracleConfig cfg;
  cfg.zero_fraction = 0.5;
  FullModel m = FullModel::random(g, 99, cfg);
  CHECK_NOTHROW(m.check_filled(1e-12));
  CHECK_NOTHROW(check_normalization(m.interventional(0), 1e-9));
  // With half the weights zeroed some cells should actually be zero.
  DistributionTable obs = m.interventional(0);
  bool has_zero = false;
  for (double v : obs.values) has_zero |= (v == 0.0);
  CHECK(has_zero);
}

TEST_CASE("oracle caps oversized enumerations") {
  CausalGraph g;
  for (int i = 0; i < 24; ++i) {
    g.add_observed("V" + std::to_string(i), 2);
  }
  g.add_hidden("U");
  g.add_edge("U", "V0");
  g.add_edge("U", "V1");
  OracleConfig cfg;
  FullModel m(g, cfg);
  CHECK_THROWS_AS(m.all_interventionals(), CapError);
}
