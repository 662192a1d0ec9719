#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

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

namespace py = pybind11;
using namespace causalineq;

namespace {

std::string lower(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
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

// One graph with its derived machinery and the tables added so far. The
// topological order, closure and table set all reference the graph member, so
// the object is pinned in place once constructed.
struct Model {
  CausalGraph g;
  OrderedGraph og;
  IdentifiedClosure closure;
  TableSet tables;
  std::vector<VarSet> given;

  Model(CausalGraph graph, int cap)
      : g(std::move(graph)), og(make_ordered(g)), closure(og, cap),
        tables(&g) {}
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  VarSet names_to_set(const std::vector<std::string>& names) const {
    VarSet s = 0;
    for (const auto& n : names) s |= var_bit(g.require_observed(n));
    return s;
  }

  py::list set_names_list(VarSet s) const {
    py::list out;
    for (int i : set_members(s)) out.append(g.observed(i).name);
    return out;
  }

  py::dict assignment_dict(const std::vector<int>& asg, VarSet vars) const {
    py::dict d;
    for (int v : og.order) {
      if (contains(vars, v)) d[py::str(lower(g.observed(v).name))] = asg[v];
    }
    return d;
  }

  void note_given(VarSet mask) {
    for (VarSet m : given) {
      if (m == mask) return;
    }
    given.push_back(mask);
  }

  void add_table(const std::vector<std::string>& intervened,
                 std::vector<double> values) {
    VarSet mask = names_to_set(intervened);
    DistributionTable t = DistributionTable::zeros(g, mask);
    if (values.size() != t.values.size()) {
      throw InputError("expected " + std::to_string(t.values.size()) +
                       " values, got " + std::to_string(values.size()));
    }
    t.values = std::move(values);
    check_normalization(t, 1e-6);
    note_given(mask);
    tables.add(std::move(t));
  }

  void add_table_file(const std::string& path) {
    DistributionTable t = read_distribution_file(g, path);
    check_normalization(t, 1e-6);
    note_given(t.intervened);
    tables.add(std::move(t));
  }

  void load_oracle_tables(std::uint64_t seed, int hidden_domain,
                          double zero_fraction, bool observational_only) {
    OracleConfig cfg;
    cfg.default_hidden_domain = hidden_domain;
    cfg.zero_fraction = zero_fraction;
    FullModel model = FullModel::random(g, seed, cfg);
    if (observational_only) {
      note_given(0);
      tables.add(model.interventional(0));
      return;
    }
    for (auto& [mask, table] : model.all_interventionals()) {
      note_given(mask);
      tables.add(table);
    }
  }

  std::vector<VarSet> availability_sets(
      const std::optional<std::vector<std::vector<std::string>>>& available)
      const {
    std::vector<VarSet> sets;
    if (available) {
      for (const auto& names : *available) sets.push_back(names_to_set(names));
    } else {
      sets = given;
    }
    if (sets.empty()) {
      throw InputError(
          "no distributions available; add tables or pass available sets");
    }
    return sets;
  }

  py::list equalities(bool full_enumeration) const {
    EqualityOptions eo;
    eo.full_enumeration = full_enumeration;
    py::list out;
    for (const auto& eq : enumerate_equalities(og, closure, eo)) {
      py::dict d;
      d["id"] = eq.id;
      d["subject"] = set_names_list(eq.subject);
      d["lhs"] = display_expr(og, eq.lhs);
      d["rhs"] = display_expr(og, eq.rhs);
      d["identified"] = eq.identified;
      out.append(d);
    }
    return out;
  }

  py::list families() const {
    py::list out;
    for (VarSet comp : closure.components()) {
      py::dict d;
      d["component"] = set_names_list(comp);
      py::list ineqs;
      for (const auto& e : component_inequality_family(og, closure, comp)) {
        py::dict je;
        je["id"] = e.id;
        je["display"] = e.display;
        je["triviality"] = triviality_key(e.triviality);
        ineqs.append(je);
      }
      d["inequalities"] = ineqs;
      out.append(d);
    }
    return out;
  }

  py::dict find_inequalities(
      const std::optional<std::vector<std::vector<std::string>>>& available)
      const {
    AvailabilityContext avail(og, closure, availability_sets(available));
    FindIneqsResult found = find_ineqs(avail);
    py::dict out;
    py::list kept;
    for (const auto& k : found.kept) {
      py::dict d;
      d["id"] = k.ineq.id;
      d["display"] = k.ineq.display;
      d["triviality"] = triviality_key(k.ineq.triviality);
      py::list resolved;
      for (const auto& e : k.resolved) resolved.append(display_expr(og, e));
      d["resolved"] = resolved;
      kept.append(d);
    }
    py::list projected;
    for (const auto& p : found.projected) {
      py::dict d;
      d["id"] = p.id;
      d["display"] = p.display;
      d["pointwise"] = p.display_pointwise;
      d["tautological"] = p.tautological;
      projected.append(d);
    }
    out["kept"] = kept;
    out["projected"] = projected;
    return out;
  }

  py::dict evaluate(double tolerance) const {
    AvailabilityContext avail(og, closure, availability_sets(std::nullopt));
    FindIneqsResult found = find_ineqs(avail);
    std::vector<EqualityConstraint> eqs = enumerate_equalities(og, closure);
    EvalReport report =
        evaluate_constraints(og, tables, eqs, &found, EvalOptions{tolerance});
    py::dict out;
    out["tolerance"] = report.tolerance;
    out["violations"] = report.violations;
    out["skipped"] = report.skipped;
    out["all_satisfied"] = report.all_satisfied();
    py::list records;
    for (const auto& r : report.records) {
      py::dict d;
      d["id"] = r.id;
      d["kind"] = r.kind;
      d["evaluated"] = r.evaluated;
      d["satisfied"] = r.satisfied;
      d["degenerate_support"] = r.degenerate_support;
      d["detail"] = r.detail;
      if (r.evaluated) {
        d["worst"] = r.worst;
        if (!r.worst_assignment.empty()) {
          d["worst_assignment"] =
              assignment_dict(r.worst_assignment, g.all_observed());
        }
      }
      records.append(d);
    }
    out["records"] = records;
    return out;
  }

  py::dict bounds(const std::vector<std::string>& target,
                  const std::string& mode, double tolerance) const {
    BoundsOptions opts;
    if (mode == "per-cell") {
      opts.mode = BoundsOptions::Mode::per_cell;
    } else if (mode == "joint-lp") {
      opts.mode = BoundsOptions::Mode::joint_lp;
    } else {
      throw InputError("mode must be 'per-cell' or 'joint-lp'");
    }
    opts.tolerance = tolerance;
    if (given.empty()) {
      throw InputError("no distributions available; add tables first");
    }
    BoundsResult res =
        derive_bounds(og, closure, given, tables, names_to_set(target), opts);
    bool joint =
        !res.point_identified && opts.mode == BoundsOptions::Mode::joint_lp;
    VarSet cell_vars = joint ? res.target_deps : g.all_observed();

    py::dict out;
    out["target"] = set_names_list(res.target_free);
    out["depends_on"] = set_names_list(res.target_deps);
    out["point_identified"] = res.point_identified;
    if (res.point_identified) {
      out["formula"] = display_expr(og, res.identified_formula);
    }
    out["mode"] = joint ? "joint-lp" : "per-cell";
    py::list cells;
    for (const auto& c : res.cells) {
      py::dict d;
      d["assignment"] = assignment_dict(c.assignment, cell_vars);
      d["lower"] = c.lower;
      d["upper"] = c.upper;
      d["lower_source"] = c.lower_source;
      d["upper_source"] = c.upper_source;
      cells.append(d);
    }
    out["cells"] = cells;
    out["notes"] = res.notes;
    return out;
  }
};

}  // namespace

PYBIND11_MODULE(causalineq_core, m) {
  m.doc() =
      "Equality and inequality constraints of causal models with hidden "
      "variables";

  py::register_exception<InputError>(m, "InputError");
  py::register_exception<CapError>(m, "CapError");

  py::class_<Model>(m, "Model")
      .def(py::init([](const std::string& graph_text, int component_cap) {
             std::istringstream in(graph_text);
             return std::make_unique<Model>(parse_graph(in, "<graph>"),
                                            component_cap);
           }),
           py::arg("graph_text"),
           py::arg("component_cap") = kDefaultComponentCap)
      .def_static(
          "from_file",
          [](const std::string& path, int component_cap) {
            return std::make_unique<Model>(read_graph_file(path),
                                           component_cap);
          },
          py::arg("path"), py::arg("component_cap") = kDefaultComponentCap)
      .def_property_readonly("observed_names",
                             [](const Model& s) {
                               py::list out;
                               for (int i = 0; i < s.g.observed_count(); ++i) {
                                 out.append(s.g.observed(i).name);
                               }
                               return out;
                             })
      .def("add_table", &Model::add_table, py::arg("intervened"),
           py::arg("values"),
           "Add a distribution: `intervened` names the held-fixed variables "
           "([] for observational), `values` is row-major over the full "
           "space in declaration order, last variable fastest.")
      .def("add_table_file", &Model::add_table_file, py::arg("path"))
      .def("load_oracle_tables", &Model::load_oracle_tables, py::arg("seed"),
           py::arg("hidden_domain") = 4, py::arg("zero_fraction") = 0.0,
           py::arg("observational_only") = false,
           "Sample a fully specified latent model and add its brute-force "
           "tables.")
      .def("equalities", &Model::equalities,
           py::arg("full_enumeration") = false)
      .def("families", &Model::families)
      .def("find_inequalities", &Model::find_inequalities,
           py::arg("available") = py::none())
      .def("evaluate", &Model::evaluate, py::arg("tolerance") = 1e-9)
      .def("bounds", &Model::bounds, py::arg("target"),
           py::arg("mode") = "per-cell", py::arg("tolerance") = 1e-9);
}
