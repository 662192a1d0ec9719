#pragma once

#include <initializer_list>
#include <vector>

#include "causalineq/graph.hpp"
#include "causalineq/oracle.hpp"

namespace testsupport {

using namespace causalineq;

// Z -> X -> Y with a latent common cause of X and Y; Z acts as an instrument
// for the effect of X on Y.
inline CausalGraph instrument_graph(int domain = 2) {
  CausalGraph g;
  g.add_observed("Z", domain);
  g.add_observed("X", domain);
  g.add_observed("Y", domain);
  g.add_hidden("U");
  g.add_edge("Z", "X");
  g.add_edge("X", "Y");
  g.add_edge("U", "X");
  g.add_edge("U", "Y");
  return g;
}

// Five observed variables W1 -> X -> W2 -> Y -> Z (plus X -> Y) entangled by
// three latent roots: one over {X,Y,Z}, one over {Y,Z}, one over {W1,W2}.
// Exercises both an identified and a heavily confounded c-component.
inline CausalGraph chain5_graph(int domain = 2) {
  CausalGraph g;
  g.add_observed("W1", domain);
  g.add_observed("X", domain);
  g.add_observed("W2", domain);
  g.add_observed("Y", domain);
  g.add_observed("Z", domain);
  g.add_hidden("U1");
  g.add_hidden("U2");
  g.add_hidden("U3");
  g.add_edge("W1", "X");
  g.add_edge("X", "W2");
  g.add_edge("X", "Y");
  g.add_edge("W2", "Y");
  g.add_edge("Y", "Z");
  g.add_edge("U1", "X");
  g.add_edge("U1", "Y");
  g.add_edge("U1", "Z");
  g.add_edge("U2", "Y");
  g.add_edge("U2", "Z");
  g.add_edge("U3", "W1");
  g.add_edge("U3", "W2");
  return g;
}

inline VarSet vs(const CausalGraph& g,
                 std::initializer_list<const char*> names) {
  VarSet out = 0;
  for (const char* n : names) out |= var_bit(g.require_observed(n));
  return out;
}

// Fully specified binary instrument model with hand-picked parameters; the
// oracle tests pin its distributions to hand-computed numbers.
inline FullModel instrument_hand_model() {
  OracleConfig cfg;
  cfg.default_hidden_domain = 2;
  FullModel m(instrument_graph(), cfg);
  std::vector<int> obs(3, 0), hid(1, 0);
  m.cpt(0, obs, hid, 0) = 0.7;
  m.cpt(0, obs, hid, 1) = 0.3;
  m.prior(0, 0) = 0.6;
  m.prior(0, 1) = 0.4;
  const double x1[2][2] = {{0.1, 0.7}, {0.8, 0.2}};  // [z][u] -> P(x=1|z,u)
  const double y1[2][2] = {{0.2, 0.9}, {0.5, 0.6}};  // [x][u] -> P(y=1|x,u)
  for (int z = 0; z < 2; ++z) {
    for (int u = 0; u < 2; ++u) {
      obs[0] = z;
      hid[0] = u;
      m.cpt(1, obs, hid, 1) = x1[z][u];
      m.cpt(1, obs, hid, 0) = 1 - x1[z][u];
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int u = 0; u < 2; ++u) {
      obs[1] = x;
      hid[0] = u;
      m.cpt(2, obs, hid, 1) = y1[x][u];
      m.cpt(2, obs, hid, 0) = 1 - y1[x][u];
    }
  }
  m.check_filled();
  return m;
}

}  // namespace testsupport
