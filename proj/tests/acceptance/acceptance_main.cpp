// Acceptance battery: eight end-to-end criteria, one pass/fail line each.
// Every expected value is either frozen from hand derivation or checked
// against the brute-force latent oracle; tolerances are pinned per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "causalineq/availability.hpp"
#include "causalineq/bounds.hpp"
#include "causalineq/equality.hpp"
#include "causalineq/evaluate.hpp"
#include "causalineq/expr.hpp"
#include "causalineq/graph.hpp"
#include "causalineq/inequality.hpp"
#include "causalineq/oracle.hpp"
#include "causalineq/simplex.hpp"
#include "causalineq/table.hpp"

using namespace causalineq;
using testsupport::chain5_graph;
using testsupport::instrument_graph;
using testsupport::vs;

namespace {

struct Criterion {
  std::string label;
  bool ok = true;
  std::vector<std::string> failures;
  std::string stats;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (failures.size() < 12) failures.push_back(what);
    }
  }
  void check_close(double got, double want, double tol,
                   const std::string& what) {
    if (!(std::fabs(got - want) <= tol)) {
      ok = false;
      if (failures.size() < 12) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (tol " << tol
           << ")";
        failures.push_back(os.str());
      }
    }
  }
};

std::string golden(const OrderedGraph& og, const EqualityConstraint& eq) {
  return display_expr(og, eq.lhs) + " = " + display_expr(og, eq.rhs);
}

const KeptIneq* kept_by_id(const FindIneqsResult& r, const std::string& id) {
  for (const auto& k : r.kept) {
    if (k.ineq.id == id) return &k;
  }
  return nullptr;
}

const ProjectedIneq* proj_by_id(const FindIneqsResult& r,
                                const std::string& id) {
  for (const auto& p : r.projected) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const ConstraintEvalRecord* record_by_id(const EvalReport& rep,
                                         const std::string& id) {
  for (const auto& r : rep.records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

// Temp workspace for the CLI round trips.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("causalineq-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& content) {
    auto p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliRun run_cli(TempDir& tmp, const std::string& args) {
  CliRun r;
#ifdef CAUSALINEQ_CLI_PATH
  auto outp = tmp.path / "cli_out.txt";
  auto errp = tmp.path / "cli_err.txt";
  std::string cmd = std::string("\"") + CAUSALINEQ_CLI_PATH + "\" " + args +
                    " > \"" + outp.string() + "\" 2> \"" + errp.string() +
                    "\"";
  int status = std::system(cmd.c_str());
  if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(outp);
  r.err = slurp(errp);
#else
  (void)tmp;
  (void)args;
#endif
  return r;
}

const char* kInstrumentGraphText =
    "observed Z 2\n"
    "observed X 2\n"
    "observed Y 2\n"
    "edge Z X\n"
    "edge X Y\n"
    "bidir X Y\n";

// ---------------------------------------------------------------------------
// 1. The instrument: frozen symbolic battery. The three interventional
// equalities, the four-member expansion family over the confounded pair with
// its two degenerate members flagged, and the observational projection that
// is the instrumental inequality.
void criterion_instrument_battery(Criterion& c) {
  CausalGraph g = instrument_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);

  std::map<std::string, std::string> eq_displays;
  for (const auto& eq : enumerate_equalities(og, closure)) {
    eq_displays[eq.id] = golden(og, eq);
  }
  c.check(eq_displays["eq:x,y"] == "P_{z}(x,y) = P(x,y|z)",
          "joint effect equality, got: " + eq_displays["eq:x,y"]);
  c.check(eq_displays["eq:x"] == "P_{z,y}(x) = P(x|z)",
          "exposure equality, got: " + eq_displays["eq:x"]);
  c.check(eq_displays["eq:y"] == "P_{z,x}(y) = P_{x}(y)",
          "outcome equality, got: " + eq_displays["eq:y"]);

  auto family = component_inequality_family(og, closure, vs(g, {"X", "Y"}));
  c.check(family.size() == 4, "expected 4 family members");
  if (family.size() == 4) {
    c.check(family[0].display ==
                "1 - P_{z,y}(x) - P_{z,x}(y) + P_{z}(x,y) ≥ 0",
            "member 0 display, got: " + family[0].display);
    c.check(family[1].display == "P_{z,y}(x) - P_{z}(x,y) ≥ 0",
            "member 1 display, got: " + family[1].display);
    c.check(family[2].display == "P_{z,x}(y) - P_{z}(x,y) ≥ 0",
            "member 2 display, got: " + family[2].display);
    c.check(family[3].display == "P_{z}(x,y) ≥ 0",
            "member 3 display, got: " + family[3].display);
    c.check(family[0].triviality == IneqTriviality::none,
            "member 0 should be substantive");
    c.check(family[1].triviality == IneqTriviality::implied_by_equalities,
            "member 1 should be implied by equalities");
    c.check(family[2].triviality == IneqTriviality::none,
            "member 2 should be substantive");
    // The single factor over the identified pair is computable from the
    // observational joint, so the stronger classification applies.
    c.check(family[3].triviality == IneqTriviality::implied_by_equalities,
            "member 3 should be flagged as adding nothing");
  }

  AvailabilityContext avail(og, closure, {VarSet{0}});
  auto found = find_ineqs(avail);
  const ProjectedIneq* inst = proj_by_id(found, "proj:{y}:{x,y}");
  c.check(inst != nullptr, "missing observational projection proj:{y}:{x,y}");
  if (inst) {
    c.check(inst->display == "Σ_{y} max_{z} P(x,y|z) ≤ 1",
            "instrumental display, got: " + inst->display);
    c.check(!inst->tautological, "instrumental projection is substantive");
  }
  c.stats = "3 equalities, 4 family members, 1 projection checked";
}

// ---------------------------------------------------------------------------
// 2. The confounded chain: frozen symbolic battery. Ten interventional
// equalities, the eight-member expansion family over {X,Y,Z}, the fully
// implied family over {W1,W2}, the two kept bounds with one extra experiment,
// the deep observational projection, and the cross-experiment projection.
void criterion_chain_battery(Criterion& c) {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);
  VarSet v_all = g.all_observed();

  std::map<std::string, std::string> eq_displays;
  for (const auto& eq : enumerate_equalities(og, closure)) {
    eq_displays[eq.id] = golden(og, eq);
  }
  const std::vector<std::pair<std::string, std::string>> expected_eqs = {
      {"eq:x,y,z",
       "P_{w1,w2}(x,y,z) = P(z|w1,x,w2,y) P(y|w1,x,w2) P(x|w1)"},
      {"eq:x,y", "P_{w1,w2,z}(x,y) = P(y|w1,x,w2) P(x|w1)"},
      {"eq:x,z", "P_{w1,w2,y}(x,z) = P_{w1,y}(x,z)"},
      {"eq:y,z", "P_{w1,x,w2}(y,z) = P_{x,w2}(y,z)"},
      {"eq:x", "P_{w1,w2,y,z}(x) = P(x|w1)"},
      {"eq:y", "P_{w1,x,w2,z}(y) = P_{x,w2}(y)"},
      {"eq:z", "P_{w1,x,w2,y}(z) = P_{y}(z)"},
      {"eq:w1,w2", "P_{x,y,z}(w1,w2) = P(w2|w1,x) P(w1)"},
      {"eq:w1", "P_{x,w2,y,z}(w1) = P(w1)"},
      {"eq:w2", "P_{w1,x,y,z}(w2) = Σ_{w1} P(w2|w1,x) P(w1)"},
  };
  for (const auto& [id, want] : expected_eqs) {
    c.check(eq_displays[id] == want, id + ", got: " + eq_displays[id]);
  }

  auto family = component_inequality_family(og, closure, vs(g, {"X", "Y", "Z"}));
  c.check(family.size() == 8, "expected 8 family members over {x,y,z}");
  if (family.size() == 8) {
    c.check(family[1].display ==
                "P_{w1,w2,y,z}(x) - P_{w1,w2,z}(x,y) - P_{w1,w2,y}(x,z)"
                " + P_{w1,w2}(x,y,z) ≥ 0",
            "member 1 display, got: " + family[1].display);
    c.check(family[4].display ==
                "P_{w1,w2,z}(x,y) - P_{w1,w2}(x,y,z) ≥ 0",
            "member 4 display, got: " + family[4].display);
    c.check(family[6].display ==
                "P_{w1,x,w2}(y,z) - P_{w1,w2}(x,y,z) ≥ 0",
            "member 6 display, got: " + family[6].display);
    c.check(family[7].display == "P_{w1,w2}(x,y,z) ≥ 0",
            "member 7 display, got: " + family[7].display);
  }

  auto family_w = component_inequality_family(og, closure, vs(g, {"W1", "W2"}));
  c.check(family_w.size() == 4, "expected 4 family members over {w1,w2}");
  for (const auto& e : family_w) {
    c.check(e.triviality == IneqTriviality::implied_by_equalities ||
                e.triviality == IneqTriviality::single_term,
            e.id + " should carry no information beyond the equalities");
  }
  int implied = 0;
  for (const auto& e : family_w) {
    if (e.triviality == IneqTriviality::implied_by_equalities) ++implied;
  }
  c.check(implied >= 3, "the {w1,w2} family should be implied by equalities");

  // Available: the observational joint, the experiment holding {W1,W2,Y},
  // and the untried effect's own distribution. The kept pair brackets the
  // untried effect from below and above.
  AvailabilityContext avail_pair(
      og, closure,
      {VarSet{0}, v_all & ~vs(g, {"X", "Z"}), v_all & ~vs(g, {"Z"})});
  auto found_pair = find_ineqs(avail_pair);
  const KeptIneq* low = kept_by_id(found_pair, "ineq:{z}:{x,z}");
  c.check(low != nullptr, "missing kept lower bound ineq:{z}:{x,z}");
  if (low) {
    c.check(low->ineq.display ==
                "P_{w1,x,w2,y}(z) - P_{w1,w2,y}(x,z) ≥ 0",
            "lower bound display, got: " + low->ineq.display);
  }
  const KeptIneq* up = kept_by_id(found_pair, "ineq:{}:{x,z}");
  c.check(up != nullptr, "missing kept upper bound ineq:{}:{x,z}");
  if (up) {
    c.check(up->ineq.display ==
                "1 - P_{w1,w2,y,z}(x) - P_{w1,x,w2,y}(z)"
                " + P_{w1,w2,y}(x,z) ≥ 0",
            "upper bound display, got: " + up->ineq.display);
    bool saw_obs_form = false;
    for (size_t i = 0; i < up->ineq.terms.size(); ++i) {
      if (up->ineq.terms[i].free == vs(g, {"X"})) {
        saw_obs_form = display_expr(og, up->resolved[i]) == "P(x|w1)";
      }
    }
    c.check(saw_obs_form,
            "the held-exposure factor should resolve to its observational "
            "form P(x|w1)");
  }

  // Observational projection three factors deep.
  AvailabilityContext avail_obs(og, closure, {VarSet{0}});
  auto found_obs = find_ineqs(avail_obs);
  const ProjectedIneq* deep = proj_by_id(found_obs, "proj:{y,z}:{x,y,z}");
  c.check(deep != nullptr, "missing observational projection");
  if (deep) {
    c.check(deep->display ==
                "Σ_{y,z} max_{w1} P(z|w1,x,w2,y) P(y|w1,x,w2) P(x|w1)"
                " ≤ 1",
            "deep projection display, got: " + deep->display);
  }

  // With the {W2,X} experiment at hand the projection mixes experimental and
  // observational factors.
  AvailabilityContext avail_mix(og, closure, {VarSet{0}, vs(g, {"W2", "X"})});
  auto found_mix = find_ineqs(avail_mix);
  const ProjectedIneq* mix = proj_by_id(found_mix, "proj:{y}:{x,y,z}");
  c.check(mix != nullptr, "missing mixed projection");
  if (mix) {
    c.check(mix->display ==
                "Σ_{y} max_{w1,z} [P(y|w1,x,w2) P(x|w1) + P_{x,w2}(y,z)"
                " - P(z|w1,x,w2,y) P(y|w1,x,w2) P(x|w1)] ≤ 1",
            "mixed projection display, got: " + mix->display);
  }
  c.stats = "10 equalities, 12 family members, 2 bounds, 2 projections";
}

// ---------------------------------------------------------------------------
// 3. Soundness sweep: random latent models over both graphs, binary and
// ternary observed domains, hidden domain 4. Every derived equality must hold
// to 1e-9 and every inequality, kept or projected, must have slack >= -1e-9
// on the model's own brute-force tables.
void criterion_soundness_sweep(Criterion& c) {
  struct Setup {
    const char* name;
    CausalGraph g;
    std::uint64_t seed_base;
  };
  std::vector<Setup> setups;
  setups.push_back({"instrument d2", instrument_graph(2), 1101});
  setups.push_back({"instrument d3", instrument_graph(3), 1201});
  setups.push_back({"chain d2", chain5_graph(2), 2101});
  setups.push_back({"chain d3", chain5_graph(3), 2201});

  double worst_eq = 0.0;
  double min_slack = 1.0;
  int models = 0;
  for (auto& setup : setups) {
    OrderedGraph og = make_ordered(setup.g);
    IdentifiedClosure closure(og);
    auto eqs = enumerate_equalities(og, closure);
    std::vector<VarSet> all_masks;
    for (VarSet m = 0; m < (VarSet{1} << setup.g.observed_count()); ++m) {
      all_masks.push_back(m);
    }
    AvailabilityContext avail_full(og, closure, all_masks);
    auto found_full = find_ineqs(avail_full);
    AvailabilityContext avail_obs(og, closure, {VarSet{0}});
    auto found_obs = find_ineqs(avail_obs);
    std::vector<EqualityConstraint> no_eqs;

    OracleConfig cfg;
    cfg.default_hidden_domain = 4;
    for (int i = 0; i < 50; ++i) {
      FullModel model = FullModel::random(setup.g, setup.seed_base + i, cfg);
      TableSet tables(&setup.g);
      for (auto& [mask, t] : model.all_interventionals()) tables.add(t);
      ++models;

      EvalReport full = evaluate_constraints(og, tables, eqs, &found_full,
                                             EvalOptions{1e-9});
      EvalReport obs = evaluate_constraints(og, tables, no_eqs, &found_obs,
                                            EvalOptions{1e-9});
      for (const EvalReport* rep : {&full, &obs}) {
        c.check(rep->violations == 0,
                std::string(setup.name) + " seed " +
                    std::to_string(setup.seed_base + i) + ": " +
                    std::to_string(rep->violations) + " violations");
        c.check(rep->skipped == 0,
                std::string(setup.name) + " seed " +
                    std::to_string(setup.seed_base + i) +
                    ": unexpected skipped records");
        for (const auto& r : rep->records) {
          if (!r.evaluated) continue;
          if (r.kind == "equality") {
            worst_eq = std::max(worst_eq, std::fabs(r.worst));
          } else {
            min_slack = std::min(min_slack, r.worst);
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << models << " models, worst equality residual " << worst_eq
     << ", min inequality slack " << min_slack;
  c.stats = os.str();
}

// ---------------------------------------------------------------------------
// 4. Dual-path identity: the alternating-sum expansion of each inequality
// equals the direct latent computation (factors of the inner set, complement
// factors of the rest) on random chain models, to 1e-12.
void criterion_dual_path(Criterion& c) {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);

  OracleConfig cfg;
  cfg.default_hidden_domain = 4;
  double worst = 0.0;
  int pairs = 0;
  for (int i = 0; i < 20; ++i) {
    FullModel model = FullModel::random(g, 3301 + i, cfg);
    for (VarSet comp : closure.components()) {
      for (VarSet s1p = comp;; s1p = (s1p - 1) & comp) {
        for (VarSet s1 = s1p;; s1 = (s1 - 1) & s1p) {
          double d = model.product_check(s1, s1p);
          worst = std::max(worst, d);
          ++pairs;
          c.check(d <= 1e-12, "seed " + std::to_string(3301 + i) +
                                  " discrepancy " + std::to_string(d));
          if (s1 == 0) break;
        }
        if (s1p == 0) break;
      }
    }
  }
  std::ostringstream os;
  os << pairs << " pairs over 20 models, worst discrepancy " << worst;
  c.stats = os.str();
}

// ---------------------------------------------------------------------------
// 5. Bound sandwich: with the observational joint and the experiment holding
// {W1,W2,Y}, the derived interval for the untried effect on Z matches the
// kept pair's closed forms to 1e-9 and contains the oracle's true value in
// every cell, across 100 random chain models.
void criterion_bound_sandwich(Criterion& c) {
  CausalGraph g = chain5_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);
  VarSet v_all = g.all_observed();
  VarSet held = v_all & ~vs(g, {"X", "Z"});
  VarSet target_held = v_all & ~vs(g, {"Z"});

  OracleConfig cfg;
  cfg.default_hidden_domain = 4;
  double worst_gap = 0.0;
  int cells = 0;
  for (int i = 0; i < 100; ++i) {
    FullModel model = FullModel::random(g, 4401 + i, cfg);
    DistributionTable obs = model.interventional(0);
    DistributionTable exp = model.interventional(held);
    DistributionTable truth = model.interventional(target_held);
    TableSet tables(&g);
    tables.add(obs);
    tables.add(exp);
    MarginalCache mc(&obs);

    BoundsResult res = derive_bounds(og, closure, {VarSet{0}, held}, tables,
                                     vs(g, {"Z"}), BoundsOptions{});
    c.check(!res.point_identified, "target should not be point identified");
    c.check(res.cells.size() == 32, "expected one cell per full assignment");
    for (const auto& cell : res.cells) {
      const auto& asg = cell.assignment;
      double lower_form = exp.at(asg);
      double upper_form = 1.0 - mc.cond(vs(g, {"X"}), vs(g, {"W1"}), asg) +
                          exp.at(asg);
      double tv = truth.at(asg);
      c.check_close(cell.lower, lower_form, 1e-9, "lower closed form");
      c.check_close(cell.upper, upper_form, 1e-9, "upper closed form");
      c.check(cell.lower_source == "ineq:{z}:{x,z}",
              "lower source, got: " + cell.lower_source);
      c.check(cell.upper_source == "ineq:{}:{x,z}",
              "upper source, got: " + cell.upper_source);
      c.check(cell.lower - 1e-9 <= tv && tv <= cell.upper + 1e-9,
              "true value escapes the interval, seed " +
                  std::to_string(4401 + i));
      worst_gap = std::max(worst_gap,
                           std::max(std::fabs(cell.lower - lower_form),
                                    std::fabs(cell.upper - upper_form)));
      ++cells;
    }
  }
  std::ostringstream os;
  os << cells << " cells over 100 models, worst closed-form gap " << worst_gap;
  c.stats = os.str();
}

// ---------------------------------------------------------------------------
// 6. Violation detection. The incompatible table is constructed by a small
// oracle-free grid search: P(z) uniform, and each z places all conditional
// mass on a single (x,y) cell. The first combination whose summed max exceeds
// one is kept. It must be flagged in-process and by the iv-test subcommand.
void criterion_violation_detection(Criterion& c) {
  CausalGraph g = instrument_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);

  // Grid search over the 16 deterministic-conditional tables.
  DistributionTable bad = DistributionTable::zeros(g, 0);
  bool found_witness = false;
  for (int c0 = 0; c0 < 4 && !found_witness; ++c0) {
    for (int c1 = 0; c1 < 4 && !found_witness; ++c1) {
      // z=0 mass on cell c0 = (x0,y0); z=1 mass on cell c1 = (x1,y1).
      int x0 = c0 >> 1, y0 = c0 & 1, x1 = c1 >> 1, y1 = c1 & 1;
      double sum_max = 0.0;  // over y, max over z of P(x=x0, y | z)
      for (int y = 0; y < 2; ++y) {
        double p0 = (y == y0) ? 1.0 : 0.0;
        double p1 = (x1 == x0 && y == y1) ? 1.0 : 0.0;
        sum_max += std::max(p0, p1);
      }
      if (sum_max > 1.0) {
        bad.at({0, x0, y0}) = 0.5;
        bad.at({1, x1, y1}) = 0.5;
        found_witness = true;
      }
    }
  }
  c.check(found_witness, "grid search should find an incompatible table");
  check_normalization(bad, 1e-9);

  TableSet tables(&g);
  tables.add(bad);
  AvailabilityContext avail(og, closure, {VarSet{0}});
  auto found = find_ineqs(avail);
  std::vector<EqualityConstraint> no_eqs;
  EvalReport rep =
      evaluate_constraints(og, tables, no_eqs, &found, EvalOptions{1e-9});
  c.check(rep.violations >= 1, "the battery should flag the table");
  const ConstraintEvalRecord* rec = record_by_id(rep, "proj:{y}:{x,y}");
  c.check(rec != nullptr, "missing instrumental record");
  if (rec) {
    c.check(rec->evaluated && !rec->satisfied,
            "the instrumental projection should be violated");
    c.check_close(rec->worst, -1.0, 1e-9, "instrumental slack");
  }

  TempDir tmp;
  std::string graph_path = tmp.file("iv.graph", kInstrumentGraphText);
  std::ostringstream data;
  data << "intervened -\nvars Z X Y\nvalues\n";
  for (int z = 0; z < 2; ++z) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        data << bad.at({z, x, y}) << (y == 1 ? "\n" : " ");
      }
    }
  }
  std::string data_path = tmp.file("bad.dist", data.str());
  CliRun run = run_cli(tmp, "iv-test --graph \"" + graph_path + "\" --data \"" +
                                data_path + "\"");
  c.check(run.exit_code == 1,
          "iv-test exit code, got " + std::to_string(run.exit_code));
  c.check(run.out.find("INCOMPATIBLE") != std::string::npos,
          "iv-test verdict missing from output");
  c.check(run.out.find("proj:{y}:{x,y}") != std::string::npos,
          "iv-test should name the violated projection");
  c.stats = "slack -1 at the witness, CLI exit 1";
}

// ---------------------------------------------------------------------------
// 7. Known incompleteness, documented. On the binary instrument the engine
// keeps only the expansion-style bounds. The exact linear program over
// deterministic response types (16 joint mechanism weights) is strictly
// tighter on the instance below, which was produced from an explicit
// response-type mixture, so it is realizable:
//   q(x-defier,  y-never)    = 5/21   q(x-complier, y-defier)  = 6/21
//   q(x-defier,  y-complier) = 5/21   q(x-complier, y-always)  = 4/21
//   q(x-never,   y-complier) = 1/21
// For the effect of forcing the exposure on at the high outcome, the engine's
// interval is [5/21, 15/21] while the mechanism program gives [9/21, 10/21];
// the true value of the generating mixture is 10/21. The test asserts the
// gap; it does not fail because of it.
void criterion_documented_incompleteness(Criterion& c) {
  CausalGraph g = instrument_graph();
  OrderedGraph og = make_ordered(g);
  IdentifiedClosure closure(og);

  // P(x,y|z) of the generating mixture, frozen as exact rationals.
  const double p_cond[2][2][2] = {
      {{1.0 / 21, 10.0 / 21}, {5.0 / 21, 5.0 / 21}},
      {{11.0 / 21, 0.0}, {6.0 / 21, 4.0 / 21}},
  };
  DistributionTable obs = DistributionTable::zeros(g, 0);
  for (int z = 0; z < 2; ++z) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        obs.at({z, x, y}) = 0.5 * p_cond[z][x][y];
      }
    }
  }
  check_normalization(obs, 1e-12);
  TableSet tables(&g);
  tables.add(obs);

  BoundsOptions opts;
  opts.mode = BoundsOptions::Mode::joint_lp;
  BoundsResult res =
      derive_bounds(og, closure, {VarSet{0}}, tables, vs(g, {"Y"}), opts);
  c.check(!res.point_identified, "effect should not be point identified");
  double eng_lo = -1, eng_up = 2;
  for (const auto& cell : res.cells) {
    if (cell.assignment[1] == 1 && cell.assignment[2] == 1) {
      eng_lo = cell.lower;
      eng_up = cell.upper;
    }
  }
  c.check_close(eng_lo, 5.0 / 21, 1e-7, "engine lower");
  c.check_close(eng_up, 15.0 / 21, 1e-7, "engine upper");

  // Mechanism program: q indexed by (rx, ry); bit z of rx is the exposure
  // produced under z, bit x of ry is the outcome produced under x. Per z the
  // (0,0) cell row is the normalization row minus the other three, so it is
  // dropped to keep the system full-rank.
  LinearProgram lp;
  lp.num_vars = 16;
  for (int z = 0; z < 2; ++z) {
    for (int cell = 1; cell < 4; ++cell) {
      int x = cell >> 1, y = cell & 1;
      std::vector<double> row(16, 0.0);
      for (int rx = 0; rx < 4; ++rx) {
        for (int ry = 0; ry < 4; ++ry) {
          if (((rx >> z) & 1) == x && ((ry >> x) & 1) == y) {
            row[rx * 4 + ry] = 1.0;
          }
        }
      }
      lp.add_row(row, LinearProgram::Rel::eq, p_cond[z][x][y]);
    }
  }
  lp.add_row(std::vector<double>(16, 1.0), LinearProgram::Rel::eq, 1.0);
  lp.objective.assign(16, 0.0);
  for (int rx = 0; rx < 4; ++rx) {
    for (int ry = 0; ry < 4; ++ry) {
      if ((ry >> 1) & 1) lp.objective[rx * 4 + ry] = 1.0;
    }
  }
  LpSolution lo = solve_lp(lp);
  LinearProgram flipped = lp;
  for (double& v : flipped.objective) v = -v;
  LpSolution hi = solve_lp(flipped);
  c.check(lo.status == LpSolution::Status::optimal, "lower program solves");
  c.check(hi.status == LpSolution::Status::optimal, "upper program solves");
  double sharp_lo = lo.value;
  double sharp_up = -hi.value;

  c.check_close(sharp_lo, 9.0 / 21, 1e-9, "mechanism lower");
  c.check_close(sharp_up, 10.0 / 21, 1e-9, "mechanism upper");
  c.check(sharp_lo >= eng_lo - 1e-9 && sharp_up <= eng_up + 1e-9,
          "mechanism interval should sit inside the engine's");
  c.check(sharp_lo - eng_lo >= 0.15,
          "documented gap below: mechanism bound should be strictly tighter");
  c.check(eng_up - sharp_up >= 0.2,
          "documented gap above: mechanism bound should be strictly tighter");
  double truth = 10.0 / 21;
  c.check(sharp_lo - 1e-9 <= truth && truth <= sharp_up + 1e-9,
          "generating mixture should satisfy the mechanism bounds");
  std::ostringstream os;
  os << "engine [" << eng_lo << ", " << eng_up << "] vs mechanism ["
     << sharp_lo << ", " << sharp_up << "]";
  c.stats = os.str();
}

// ---------------------------------------------------------------------------
// 8. Complexity guard: an 11-variable confounded component is rejected with
// the cap diagnostic instead of starting the exponential enumeration, both
// in-process and through the CLI.
void criterion_complexity_guard(Criterion& c) {
  CausalGraph g;
  std::ostringstream graph_text;
  for (int i = 0; i < 11; ++i) {
    g.add_observed("A" + std::to_string(i), 2);
    graph_text << "observed A" << i << " 2\n";
  }
  for (int i = 0; i + 1 < 11; ++i) {
    g.add_bidirected("A" + std::to_string(i), "A" + std::to_string(i + 1));
    graph_text << "bidir A" << i << " A" << i + 1 << "\n";
  }
  OrderedGraph og = make_ordered(g);

  bool threw = false;
  std::string message;
  try {
    IdentifiedClosure closure(og);
  } catch (const CapError& e) {
    threw = true;
    message = e.what();
  }
  c.check(threw, "oversized component should raise the cap error");
  c.check(message.find("has 11 variables") != std::string::npos,
          "diagnostic should report the component size, got: " + message);
  c.check(message.find("cap is 10") != std::string::npos,
          "diagnostic should report the configured cap, got: " + message);
  c.check(message.find("A0") != std::string::npos &&
              message.find("A10") != std::string::npos,
          "diagnostic should name the component, got: " + message);

  TempDir tmp;
  std::string graph_path = tmp.file("big.graph", graph_text.str());
  CliRun run = run_cli(tmp, "derive-equalities --graph \"" + graph_path + "\"");
  c.check(run.exit_code == 2,
          "CLI exit code, got " + std::to_string(run.exit_code));
  c.check(run.err.find("has 11 variables") != std::string::npos,
          "CLI should print the cap diagnostic, got: " + run.err);
  c.stats = "rejected in-process and via CLI";
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    void (*fn)(Criterion&);
    double limit_seconds;
  };
  const Entry entries[] = {
      {"instrument battery matches its frozen symbolic form",
       criterion_instrument_battery, 1.0},
      {"confounded chain battery and projections match their frozen forms",
       criterion_chain_battery, 5.0},
      {"random latent models satisfy every derived constraint (tol 1e-9)",
       criterion_soundness_sweep, 60.0},
      {"alternating sums agree with the direct latent computation (tol 1e-12)",
       criterion_dual_path, 60.0},
      {"one extra experiment sandwiches the untried effect (tol 1e-9)",
       criterion_bound_sandwich, 60.0},
      {"a crafted incompatible table is flagged, in-process and via iv-test",
       criterion_violation_detection, 60.0},
      {"mechanism-type program strictly tightens the kept bounds (documented)",
       criterion_documented_incompleteness, 60.0},
      {"an oversized confounded component is rejected with the cap diagnostic",
       criterion_complexity_guard, 60.0},
  };

  int failures = 0;
  int index = 0;
  for (const auto& entry : entries) {
    ++index;
    Criterion crit;
    crit.label = entry.label;
    auto start = std::chrono::steady_clock::now();
    try {
      entry.fn(crit);
    } catch (const std::exception& e) {
      crit.check(false, std::string("unexpected exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    crit.check(elapsed < entry.limit_seconds,
               "runtime " + std::to_string(elapsed) + "s exceeds " +
                   std::to_string(entry.limit_seconds) + "s");
    std::printf("%s  %d/8 %s (%.2fs)\n", crit.ok ? "PASS" : "FAIL", index,
                crit.label.c_str(), elapsed);
    if (!crit.stats.empty()) std::printf("      %s\n", crit.stats.c_str());
    for (const auto& f : crit.failures) {
      std::printf("      failure: %s\n", f.c_str());
    }
    if (!crit.ok) ++failures;
  }
  if (failures == 0) {
    std::printf("all 8 acceptance criteria pass\n");
    return 0;
  }
  std::printf("%d of 8 acceptance criteria failed\n", failures);
  return 1;
}
