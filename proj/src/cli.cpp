#include "causalineq/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "causalineq/availability.hpp"
#include "causalineq/bounds.hpp"
#include "causalineq/equality.hpp"
#include "causalineq/evaluate.hpp"
#include "causalineq/expr.hpp"
#include "causalineq/graph.hpp"
#include "causalineq/inequality.hpp"
#include "causalineq/io.hpp"
#include "causalineq/oracle.hpp"
#include "causalineq/table.hpp"

namespace causalineq {
namespace {

using nlohmann::json;

std::string lower(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

std::string set_label(const OrderedGraph& og, VarSet s) {
  return "{" + lower(set_names_ordered(og, s)) + "}";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string assignment_label(const OrderedGraph& og,
                             const std::vector<int>& asg, VarSet vars) {
  std::string out;
  for (int v : og.order) {
    if (!contains(vars, v)) continue;
    if (!out.empty()) out += ' ';
    out += lower(og.g().observed(v).name) + "=" + std::to_string(asg[v]);
  }
  return out;
}

json assignment_json(const OrderedGraph& og, const std::vector<int>& asg,
                     VarSet vars) {
  json j = json::object();
  for (int v : og.order) {
    if (contains(vars, v)) j[lower(og.g().observed(v).name)] = asg[v];
  }
  return j;
}

json names_json(const CausalGraph& g, VarSet s) {
  json j = json::array();
  for (int i : set_members(s)) j.push_back(g.observed(i).name);
  return j;
}

const char* triviality_text(IneqTriviality t) {
  switch (t) {
    case IneqTriviality::implied_by_equalities:
      return "implied by equalities";
    case IneqTriviality::single_term:
      return "single nonnegative factor";
    default:
      return nullptr;
  }
}

const char* triviality_key(IneqTriviality t) {
  switch (t) {
    case IneqTriviality::implied_by_equalities:
      return "implied-by-equalities";
    case IneqTriviality::single_term:
      return "single-term";
    default:
      return "none";
  }
}

struct Loaded {
  CausalGraph g;
  OrderedGraph og;
};

std::unique_ptr<Loaded> load_graph(const std::string& path,
                                   const std::string& order_spec) {
  auto l = std::make_unique<Loaded>();
  l->g = read_graph_file(path);
  if (order_spec.empty()) {
    l->og = make_ordered(l->g);
    return l;
  }
  std::vector<int> order;
  std::istringstream in(order_spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) {
      throw InputError("empty name in order '" + order_spec + "'");
    }
    std::size_t e = tok.find_last_not_of(" \t");
    order.push_back(l->g.require_observed(tok.substr(b, e - b + 1)));
  }
  l->og = make_ordered(l->g, order);
  return l;
}

// Stdout unless --output was given.
struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = nullptr;

  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream = &fallback;
      return;
    }
    file.open(path);
    if (!file) throw InputError("cannot open output file '" + path + "'");
    stream = &file;
  }
  std::ostream& os() { return *stream; }
};

json record_json(const OrderedGraph& og, const ConstraintEvalRecord& r) {
  json j;
  j["id"] = r.id;
  j["kind"] = r.kind;
  j["evaluated"] = r.evaluated;
  j["satisfied"] = r.satisfied;
  j["degenerate_support"] = r.degenerate_support;
  j["detail"] = r.detail;
  if (r.evaluated) {
    j["worst"] = r.worst;
    if (!r.worst_assignment.empty()) {
      j["worst_assignment"] =
          assignment_json(og, r.worst_assignment, og.g().all_observed());
    }
  }
  return j;
}

json report_json(const OrderedGraph& og, const EvalReport& report) {
  json j;
  j["tolerance"] = report.tolerance;
  j["violations"] = report.violations;
  j["skipped"] = report.skipped;
  j["all_satisfied"] = report.all_satisfied();
  json recs = json::array();
  for (const auto& r : report.records) recs.push_back(record_json(og, r));
  j["records"] = recs;
  return j;
}

void render_report_text(const OrderedGraph& og, const EvalReport& report,
                        std::ostream& os) {
  for (const auto& r : report.records) {
    os << r.id << ": ";
    if (!r.evaluated) {
      os << "skipped (" << r.detail << ")\n";
      continue;
    }
    const char* metric = r.kind == "equality" ? "residual" : "slack";
    if (r.satisfied) {
      os << "ok (" << metric << " " << fmt(r.worst) << ")";
    } else {
      os << "VIOLATED (" << metric << " " << fmt(r.worst);
      if (!r.worst_assignment.empty()) {
        os << " at "
           << assignment_label(og, r.worst_assignment, og.g().all_observed());
      }
      os << ")";
    }
    if (r.degenerate_support) os << " [degenerate contexts skipped]";
    os << "\n";
  }
  os << "summary: " << report.records.size() << " constraints, "
     << report.violations << " violated, " << report.skipped << " skipped\n";
}

struct DataBundle {
  TableSet tables;
  std::vector<VarSet> given;

  explicit DataBundle(const CausalGraph& g) : tables(&g) {}
};

DataBundle load_data(const CausalGraph& g,
                     const std::vector<std::string>& paths) {
  DataBundle d(g);
  std::set<VarSet> seen;
  for (const auto& path : paths) {
    DistributionTable t = read_distribution_file(g, path);
    check_normalization(t, 1e-6);
    if (seen.insert(t.intervened).second) d.given.push_back(t.intervened);
    d.tables.add(std::move(t));
  }
  return d;
}

int cmd_derive_equalities(const Loaded& l, int cap, bool full_enumeration,
                          bool as_json, std::ostream& os) {
  IdentifiedClosure closure(l.og, cap);
  EqualityOptions eo;
  eo.full_enumeration = full_enumeration;
  eo.component_cap = cap;
  std::vector<EqualityConstraint> eqs = enumerate_equalities(l.og, closure, eo);

  if (as_json) {
    json j;
    json list = json::array();
    for (const auto& eq : eqs) {
      json e;
      e["id"] = eq.id;
      e["subject"] = names_json(l.g, eq.subject);
      e["lhs"] = display_expr(l.og, eq.lhs);
      e["rhs"] = display_expr(l.og, eq.rhs);
      e["identified"] = eq.identified;
      e["note"] = eq.note;
      list.push_back(e);
    }
    j["equalities"] = list;
    os << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& eq : eqs) {
    os << eq.id << ": " << display_expr(l.og, eq.lhs) << " = "
       << display_expr(l.og, eq.rhs);
    if (!eq.note.empty()) os << "  [" << eq.note << "]";
    os << "\n";
  }
  return 0;
}

int cmd_derive_inequalities(const Loaded& l, int cap,
                            const std::string& component_spec, bool as_json,
                            std::ostream& os) {
  IdentifiedClosure closure(l.og, cap);
  std::vector<VarSet> comps = c_components(l.g);
  if (!component_spec.empty()) {
    VarSet want = parse_var_set(l.g, component_spec);
    bool found = false;
    for (VarSet c : comps) found = found || c == want;
    if (!found) {
      throw InputError("'" + component_spec +
                       "' is not a confounded component of this graph");
    }
    comps = {want};
  }

  json jcomps = json::array();
  for (VarSet comp : comps) {
    std::vector<ExpansionIneq> family =
        component_inequality_family(l.og, closure, comp, cap);
    if (as_json) {
      json jc;
      jc["component"] = names_json(l.g, comp);
      json list = json::array();
      for (const auto& e : family) {
        json je;
        je["id"] = e.id;
        je["s1"] = names_json(l.g, e.s1);
        je["s1p"] = names_json(l.g, e.s1p);
        je["display"] = e.display;
        je["triviality"] = triviality_key(e.triviality);
        list.push_back(je);
      }
      jc["inequalities"] = list;
      jcomps.push_back(jc);
      continue;
    }
    os << "component " << set_label(l.og, comp) << ":\n";
    for (const auto& e : family) {
      os << "  " << e.id << ": " << e.display;
      if (const char* t = triviality_text(e.triviality)) os << "  [" << t << "]";
      os << "\n";
    }
  }
  if (as_json) {
    json j;
    j["components"] = jcomps;
    os << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_findineqs(const Loaded& l, int cap,
                  const std::vector<std::string>& avail_specs, bool as_json,
                  std::ostream& os) {
  IdentifiedClosure closure(l.og, cap);
  std::vector<VarSet> given;
  for (const auto& spec : avail_specs) {
    given.push_back(parse_var_set(l.g, spec));
  }
  AvailabilityContext avail(l.og, closure, given);
  FindIneqsResult found = find_ineqs(avail, cap);

  if (as_json) {
    json j;
    json kept = json::array();
    for (const auto& k : found.kept) {
      json jk;
      jk["id"] = k.ineq.id;
      jk["display"] = k.ineq.display;
      jk["triviality"] = triviality_key(k.ineq.triviality);
      json res = json::array();
      for (const auto& e : k.resolved) res.push_back(display_expr(l.og, e));
      jk["resolved"] = res;
      kept.push_back(jk);
    }
    json projected = json::array();
    for (const auto& p : found.projected) {
      json jp;
      jp["id"] = p.id;
      jp["display"] = p.display;
      jp["pointwise"] = p.display_pointwise;
      jp["tautological"] = p.tautological;
      projected.push_back(jp);
    }
    j["kept"] = kept;
    j["projected"] = projected;
    os << j.dump(2) << "\n";
    return 0;
  }

  os << "kept:\n";
  for (const auto& k : found.kept) {
    os << "  " << k.ineq.id << ": " << k.ineq.display;
    if (const char* t = triviality_text(k.ineq.triviality)) {
      os << "  [" << t << "]";
    }
    os << "\n";
  }
  os << "projected:\n";
  for (const auto& p : found.projected) {
    os << "  " << p.id << ": " << p.display;
    if (p.tautological) os << "  [tautological]";
    os << "\n";
    if (!p.display_pointwise.empty()) {
      os << "    pointwise: " << p.display_pointwise << "\n";
    }
  }
  return 0;
}

int cmd_evaluate(const Loaded& l, int cap,
                 const std::vector<std::string>& data_paths, double tolerance,
                 bool as_json, std::ostream& os) {
  DataBundle data = load_data(l.g, data_paths);
  IdentifiedClosure closure(l.og, cap);
  AvailabilityContext avail(l.og, closure, data.given);
  FindIneqsResult found = find_ineqs(avail, cap);
  std::vector<EqualityConstraint> eqs = enumerate_equalities(l.og, closure);
  EvalReport report =
      evaluate_constraints(l.og, data.tables, eqs, &found, EvalOptions{tolerance});

  if (as_json) {
    os << report_json(l.og, report).dump(2) << "\n";
  } else {
    render_report_text(l.og, report, os);
  }
  return report.violations > 0 ? 1 : 0;
}

int cmd_iv_test(const Loaded& l, int cap,
                const std::vector<std::string>& data_paths, double tolerance,
                bool as_json, std::ostream& os) {
  if (data_paths.size() != 1) {
    throw InputError("iv-test takes exactly one --data file");
  }
  DataBundle data = load_data(l.g, data_paths);
  if (data.given != std::vector<VarSet>{0}) {
    throw InputError("iv-test needs an observational table ('intervened -')");
  }
  IdentifiedClosure closure(l.og, cap);
  AvailabilityContext avail(l.og, closure, {VarSet{0}});
  FindIneqsResult found = find_ineqs(avail, cap);
  EvalReport report = evaluate_constraints(l.og, data.tables, {}, &found,
                                           EvalOptions{tolerance});
  bool compatible = report.violations == 0;

  if (as_json) {
    json j = report_json(l.og, report);
    j["verdict"] = compatible ? "compatible" : "incompatible";
    os << j.dump(2) << "\n";
  } else {
    render_report_text(l.og, report, os);
    os << "verdict: "
       << (compatible ? "compatible with the graph"
                      : "INCOMPATIBLE with the graph")
       << "\n";
  }
  return compatible ? 0 : 1;
}

int cmd_bounds(const Loaded& l, int cap,
               const std::vector<std::string>& data_paths,
               const std::string& target_spec, const std::string& mode,
               double tolerance, bool as_json, std::ostream& os) {
  DataBundle data = load_data(l.g, data_paths);
  VarSet target = parse_var_set(l.g, target_spec);
  if (target == 0) {
    throw InputError("the bounds target cannot be the observational joint");
  }
  IdentifiedClosure closure(l.og, cap);
  BoundsOptions opts;
  opts.mode = mode == "joint-lp" ? BoundsOptions::Mode::joint_lp
                                 : BoundsOptions::Mode::per_cell;
  opts.component_cap = cap;
  opts.tolerance = tolerance;
  BoundsResult res =
      derive_bounds(l.og, closure, data.given, data.tables, target, opts);

  bool joint = !res.point_identified && opts.mode == BoundsOptions::Mode::joint_lp;
  VarSet cell_vars = joint ? res.target_deps : l.g.all_observed();

  if (as_json) {
    json j;
    j["target"] = names_json(l.g, res.target_free);
    j["depends_on"] = names_json(l.g, res.target_deps);
    j["point_identified"] = res.point_identified;
    if (res.point_identified) {
      j["formula"] = display_expr(l.og, res.identified_formula);
    }
    j["mode"] = joint ? "joint-lp" : "per-cell";
    json cells = json::array();
    for (const auto& c : res.cells) {
      json jc;
      jc["assignment"] = assignment_json(l.og, c.assignment, cell_vars);
      jc["lower"] = c.lower;
      jc["upper"] = c.upper;
      jc["lower_source"] = c.lower_source;
      jc["upper_source"] = c.upper_source;
      cells.push_back(jc);
    }
    j["cells"] = cells;
    j["notes"] = res.notes;
    os << j.dump(2) << "\n";
    return 0;
  }

  os << "target: " << set_label(l.og, res.target_free) << "  (depends on "
     << set_label(l.og, res.target_deps) << ")\n";
  if (res.point_identified) {
    os << "point-identified: " << display_expr(l.og, res.identified_formula)
       << "\n";
    for (const auto& c : res.cells) {
      os << "  " << assignment_label(l.og, c.assignment, cell_vars) << ": = "
         << fmt(c.lower) << "\n";
    }
  } else {
    os << (joint ? "joint bounds:" : "per-assignment bounds:") << "\n";
    for (const auto& c : res.cells) {
      os << "  " << assignment_label(l.og, c.assignment, cell_vars) << ": ["
         << fmt(c.lower) << ", " << fmt(c.upper) << "]  (lower "
         << c.lower_source << ", upper " << c.upper_source << ")\n";
    }
  }
  for (const auto& n : res.notes) os << "note: " << n << "\n";
  return 0;
}

int cmd_oracle_verify(const Loaded& l, int cap, int models, std::uint64_t seed,
                      int hidden_domain, double zero_fraction, double tolerance,
                      const std::string& export_dir, bool as_json,
                      std::ostream& os) {
  if (models < 1) throw InputError("--models must be at least 1");
  IdentifiedClosure closure(l.og, cap);
  std::vector<EqualityConstraint> eqs = enumerate_equalities(l.og, closure);
  AvailabilityContext avail_obs(l.og, closure, {VarSet{0}});
  FindIneqsResult found_obs = find_ineqs(avail_obs, cap);

  int exit_code = 0;
  json jresults = json::array();
  for (int m = 0; m < models; ++m) {
    std::uint64_t model_seed = seed + static_cast<std::uint64_t>(m);
    OracleConfig cfg;
    cfg.default_hidden_domain = hidden_domain;
    cfg.zero_fraction = zero_fraction;
    FullModel model = FullModel::random(l.g, model_seed, cfg);

    std::map<VarSet, DistributionTable> ints = model.all_interventionals();
    TableSet tables(&l.g);
    std::vector<VarSet> given;
    for (const auto& [mask, table] : ints) {
      given.push_back(mask);
      tables.add(table);
    }

    AvailabilityContext avail_all(l.og, closure, given);
    FindIneqsResult found_all = find_ineqs(avail_all, cap);
    EvalReport full = evaluate_constraints(l.og, tables, eqs, &found_all,
                                           EvalOptions{tolerance});
    // The observational-only battery, checked in both summed and pointwise
    // form since every table is on hand.
    EvalReport projected = evaluate_constraints(l.og, tables, {}, &found_obs,
                                                EvalOptions{tolerance});

    double worst_residual = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (const EvalReport* rep : {&full, &projected}) {
      for (const auto& r : rep->records) {
        if (!r.evaluated) continue;
        if (r.kind == "equality") {
          worst_residual = std::max(worst_residual, r.worst);
        } else {
          min_slack = std::min(min_slack, r.worst);
        }
      }
    }
    if (min_slack == std::numeric_limits<double>::infinity()) min_slack = 0;

    double product_residual = 0;
    for (VarSet comp : closure.components()) {
      for_each_subset(comp, [&](VarSet s1) {
        product_residual =
            std::max(product_residual, model.product_check(s1, comp));
      });
    }

    bool ok = full.violations == 0 && projected.violations == 0 &&
              full.skipped == 0 && projected.skipped == 0 &&
              product_residual <= tolerance;
    if (!ok) exit_code = 1;

    if (!export_dir.empty()) {
      namespace fs = std::filesystem;
      fs::path dir = fs::path(export_dir) / ("seed" + std::to_string(model_seed));
      fs::create_directories(dir);
      for (const auto& [mask, table] : ints) {
        std::string name = mask == 0 ? "obs" : var_set_spec(l.g, mask);
        std::ofstream f(dir / (name + ".dist"));
        if (!f) {
          throw InputError("cannot write table under '" + dir.string() + "'");
        }
        write_distribution(f, l.g, table);
      }
    }

    if (as_json) {
      json jr;
      jr["seed"] = model_seed;
      jr["ok"] = ok;
      jr["violations"] = full.violations + projected.violations;
      jr["worst_equality_residual"] = worst_residual;
      jr["min_inequality_slack"] = min_slack;
      jr["product_residual"] = product_residual;
      jresults.push_back(jr);
    } else {
      os << "model " << (m + 1) << "/" << models << " (seed " << model_seed
         << "): " << (ok ? "ok" : "FAILED") << "  equality residual "
         << fmt(worst_residual) << ", min slack " << fmt(min_slack)
         << ", product residual " << fmt(product_residual) << "\n";
    }
  }

  if (as_json) {
    json j;
    j["models"] = models;
    j["ok"] = exit_code == 0;
    j["results"] = jresults;
    os << j.dump(2) << "\n";
  } else {
    os << (exit_code == 0
               ? "verified " + std::to_string(models) +
                     " models: all derived constraints hold"
               : "FAILURE: some derived constraint does not hold on a model")
       << "\n";
  }
  return exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Equality and inequality constraints of causal models with hidden "
      "variables"};
  app.require_subcommand(1);

  std::string graph_path;
  std::string order_spec;
  std::string format = "text";
  std::string output_path;
  int cap = kDefaultComponentCap;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--graph", graph_path, "graph description file")
        ->required();
    sub->add_option("--order", order_spec,
                    "comma-separated topological order of the observed "
                    "variables");
    sub->add_option("--cap-c-component", cap,
                    "largest confounded-component size accepted");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", output_path,
                    "write the report to this file instead of stdout");
  };

  CLI::App* eq_cmd = app.add_subcommand(
      "derive-equalities",
      "List the equality constraints on the interventional family");
  add_common(eq_cmd);
  bool full_enumeration = false;
  eq_cmd->add_flag("--full-enumeration", full_enumeration,
                   "also emit one product identity per union of "
                   "component pieces");

  CLI::App* fam_cmd = app.add_subcommand(
      "derive-inequalities",
      "List the alternating-sign inequality battery of each confounded "
      "component");
  add_common(fam_cmd);
  std::string component_spec;
  fam_cmd->add_option("--component", component_spec,
                      "restrict to one confounded component");

  CLI::App* find_cmd = app.add_subcommand(
      "findineqs",
      "Derive the inequalities testable with the available distributions");
  add_common(find_cmd);
  std::vector<std::string> avail_specs;
  find_cmd
      ->add_option("--available", avail_specs,
                   "intervened set of an available distribution ('-' for "
                   "observational); repeatable")
      ->required();

  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Check every derivable constraint against data files");
  add_common(eval_cmd);
  std::vector<std::string> data_paths;
  double tolerance = 1e-9;
  eval_cmd->add_option("--data", data_paths, "distribution file; repeatable")
      ->required();
  eval_cmd->add_option("--tolerance", tolerance,
                       "slack and residual tolerance");

  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "Bound an untried interventional distribution from the data");
  add_common(bounds_cmd);
  std::string target_spec;
  std::string bounds_mode = "per-cell";
  bounds_cmd->add_option("--data", data_paths, "distribution file; repeatable")
      ->required();
  bounds_cmd
      ->add_option("--target", target_spec,
                   "free set of the interventional distribution to bound")
      ->required();
  bounds_cmd->add_option("--bounds-mode", bounds_mode, "bound extraction mode")
      ->check(CLI::IsMember({"per-cell", "joint-lp"}));
  bounds_cmd->add_option("--tolerance", tolerance,
                         "slack and consistency tolerance");

  CLI::App* iv_cmd = app.add_subcommand(
      "iv-test",
      "Test an observational table against the graph's observable "
      "inequalities");
  add_common(iv_cmd);
  iv_cmd->add_option("--data", data_paths, "observational distribution file")
      ->required();
  iv_cmd->add_option("--tolerance", tolerance, "slack tolerance");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-verify",
      "Cross-check every derived constraint against brute-force latent "
      "models");
  add_common(oracle_cmd);
  int models = 5;
  std::uint64_t seed = 1;
  int hidden_domain = 4;
  double zero_fraction = 0;
  std::string export_dir;
  oracle_cmd->add_option("--models", models, "number of sampled models");
  oracle_cmd->add_option("--seed", seed, "seed of the first sampled model");
  oracle_cmd->add_option("--hidden-domain", hidden_domain,
                         "domain size of hidden variables without one");
  oracle_cmd->add_option("--zero-fraction", zero_fraction,
                         "fraction of conditional weights forced to zero");
  oracle_cmd->add_option("--export-dir", export_dir,
                         "write each model's tables beneath this directory");
  oracle_cmd->add_option("--tolerance", tolerance, "verification tolerance");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("causalineq");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::unique_ptr<Loaded> l = load_graph(graph_path, order_spec);
    OutputTarget target(output_path, out);
    std::ostream& os = target.os();
    bool as_json = format == "json";

    if (eq_cmd->parsed()) {
      return cmd_derive_equalities(*l, cap, full_enumeration, as_json, os);
    }
    if (fam_cmd->parsed()) {
      return cmd_derive_inequalities(*l, cap, component_spec, as_json, os);
    }
    if (find_cmd->parsed()) {
      return cmd_findineqs(*l, cap, avail_specs, as_json, os);
    }
    if (eval_cmd->parsed()) {
      return cmd_evaluate(*l, cap, data_paths, tolerance, as_json, os);
    }
    if (bounds_cmd->parsed()) {
      return cmd_bounds(*l, cap, data_paths, target_spec, bounds_mode,
                        tolerance, as_json, os);
    }
    if (iv_cmd->parsed()) {
      return cmd_iv_test(*l, cap, data_paths, tolerance, as_json, os);
    }
    if (oracle_cmd->parsed()) {
      return cmd_oracle_verify(*l, cap, models, seed, hidden_domain,
                               zero_fraction, tolerance, export_dir, as_json,
                               os);
    }
  } catch (const CapError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace causalineq
