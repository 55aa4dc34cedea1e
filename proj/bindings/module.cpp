#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <dagiso/construct.hpp>
#include <dagiso/dsep.hpp>
#include <dagiso/io.hpp>
#include <dagiso/model.hpp>
#include <dagiso/oracle.hpp>

namespace py = pybind11;

namespace {

using dagiso::Statement;
using dagiso::Universe;
using dagiso::VarId;
using dagiso::VarSet;

// Statements cross the boundary as ([lhs names], [rhs names], [cond names]).
using PyStatement = std::tuple<std::vector<std::string>, std::vector<std::string>,
                               std::vector<std::string>>;

VarSet set_from_names(const Universe& universe, const std::vector<std::string>& names) {
  VarSet set;
  for (const std::string& name : names) set = set.with(universe.id(name));
  return set;
}

std::vector<std::string> names_of(const Universe& universe, VarSet set) {
  std::vector<std::string> out;
  for (VarId v : set.to_vector()) out.push_back(universe.name(v));
  return out;
}

Statement statement_from_py(const Universe& universe, const PyStatement& s) {
  return dagiso::canonicalize(Statement{set_from_names(universe, std::get<0>(s)),
                                        set_from_names(universe, std::get<1>(s)),
                                        set_from_names(universe, std::get<2>(s))},
                              universe);
}

PyStatement statement_to_py(const Universe& universe, const Statement& s) {
  return {names_of(universe, s.lhs), names_of(universe, s.rhs), names_of(universe, s.cond)};
}

std::vector<PyStatement> statements_to_py(const Universe& universe,
                                          const std::set<Statement>& statements) {
  std::vector<PyStatement> out;
  for (const Statement& s : statements) out.push_back(statement_to_py(universe, s));
  return out;
}

dagiso::DependencyModel build_model(const Universe& universe,
                                    const std::vector<PyStatement>& statements, bool basis,
                                    int closure_cap) {
  std::vector<Statement> converted;
  for (const PyStatement& s : statements) converted.push_back(statement_from_py(universe, s));
  if (basis) return dagiso::close_semigraphoid(converted, universe, closure_cap);
  return dagiso::DependencyModel::from_statements(universe, converted);
}

dagiso::Phase2Mode mode_from_string(const std::string& mode) {
  if (mode == "backtrack") return dagiso::Phase2Mode::Backtrack;
  if (mode == "failfast") return dagiso::Phase2Mode::FailFast;
  throw py::value_error("mode must be 'backtrack' or 'failfast'");
}

dagiso::Dag dag_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<dagiso::Edge> converted(edges.begin(), edges.end());
  return dagiso::Dag::from_edges(n, converted);
}

dagiso::DsepQuery query_from_lists(const std::vector<int>& x, const std::vector<int>& y,
                                   const std::vector<int>& z) {
  auto to_set = [](const std::vector<int>& ids) {
    VarSet s;
    for (int v : ids) s = s.with(v);
    return s;
  };
  return dagiso::DsepQuery{to_set(x), to_set(y), to_set(z)};
}

}  // namespace

PYBIND11_MODULE(dagiso, m) {
  m.doc() = "Decides whether a list of conditional independence statements is exactly "
            "the d-separation model of some dag, and produces a witness dag.";

  m.def(
      "parse_model",
      [](const std::string& text) {
        dagiso::ParsedModel parsed = dagiso::parse_model_text(text);
        py::dict out;
        out["vars"] = parsed.universe.names();
        out["statements"] = statements_to_py(parsed.universe, parsed.statements);
        return out;
      },
      py::arg("text"), "Parses statement-file text into variable names and statements.");

  m.def(
      "format_model",
      [](const std::vector<std::string>& vars, const std::vector<PyStatement>& statements) {
        Universe universe(vars);
        std::set<Statement> canonical;
        for (const PyStatement& s : statements)
          canonical.insert(statement_from_py(universe, s));
        return dagiso::format_model_text(universe, canonical);
      },
      py::arg("vars"), py::arg("statements"),
      "Renders statements back into the statement-file grammar.");

  m.def(
      "close_semigraphoid",
      [](const std::vector<std::string>& vars, const std::vector<PyStatement>& statements,
         int cap) {
        Universe universe(vars);
        return statements_to_py(universe,
                                build_model(universe, statements, true, cap).statements());
      },
      py::arg("vars"), py::arg("statements"), py::arg("cap") = dagiso::kDefaultClosureCap,
      "Closure under symmetry, decomposition, weak union and contraction.");

  m.def(
      "decide",
      [](const std::vector<std::string>& vars, const std::vector<PyStatement>& statements,
         bool basis, const std::string& mode, bool trace, int closure_cap) {
        Universe universe(vars);
        dagiso::Decision decision =
            dagiso::decide(build_model(universe, statements, basis, closure_cap),
                           mode_from_string(mode), trace);
        py::dict out;
        if (decision.is_witness()) {
          out["decision"] = "witness";
          std::vector<std::pair<std::string, std::string>> edges;
          for (const dagiso::Edge& e : decision.witness().edges())
            edges.push_back({universe.name(e.first), universe.name(e.second)});
          out["witness_edges"] = edges;
        } else {
          const dagiso::Failure& f = decision.failure();
          out["decision"] = "fail";
          py::dict failure;
          failure["phase"] = f.phase;
          failure["reason"] = dagiso::to_string(f.reason);
          failure["detail"] = f.detail;
          failure["conjecture_relied"] = f.conjecture_relied;
          out["failure"] = failure;
        }
        if (trace) {
          std::vector<std::string> lines;
          for (const dagiso::TraceEvent& e : decision.trace)
            lines.push_back(dagiso::format_event(e, universe));
          out["trace"] = lines;
        }
        return out;
      },
      py::arg("vars"), py::arg("statements"), py::arg("basis") = false,
      py::arg("mode") = "backtrack", py::arg("trace") = false,
      py::arg("closure_cap") = dagiso::kDefaultClosureCap,
      "Runs the three-phase pipeline; returns the witness dag or the failing phase.");

  m.def(
      "d_separated",
      [](int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& x,
         const std::vector<int>& y, const std::vector<int>& z) {
        return dagiso::d_separated(dag_from_edges(n, edges), query_from_lists(x, y, z));
      },
      py::arg("n"), py::arg("edges"), py::arg("x"), py::arg("y"), py::arg("z"),
      "d-separation of X from Y given Z in the dag (nodes are 0..n-1).");

  m.def(
      "d_separated_naive",
      [](int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& x,
         const std::vector<int>& y, const std::vector<int>& z) {
        return dagiso::d_separated_naive(dag_from_edges(n, edges), query_from_lists(x, y, z));
      },
      py::arg("n"), py::arg("edges"), py::arg("x"), py::arg("y"), py::arg("z"),
      "Path-enumeration oracle for d_separated.");

  m.def(
      "full_model",
      [](int n, const std::vector<std::pair<int, int>>& edges) {
        dagiso::Dag d = dag_from_edges(n, edges);
        dagiso::DependencyModel model = dagiso::full_model(d);
        py::dict out;
        out["vars"] = model.universe().names();
        out["statements"] = statements_to_py(model.universe(), model.statements());
        return out;
      },
      py::arg("n"), py::arg("edges"),
      "All statements that hold in the dag by d-separation (vars named a, b, c, ...).");

  m.def(
      "dag_isomorphic_bruteforce",
      [](const std::vector<std::string>& vars,
         const std::vector<PyStatement>& statements) -> py::object {
        Universe universe(vars);
        auto found = dagiso::is_dag_isomorphic_bruteforce(
            build_model(universe, statements, false, dagiso::kDefaultClosureCap),
            universe.size());
        if (!found) return py::none();
        std::vector<std::pair<std::string, std::string>> edges;
        for (const dagiso::Edge& e : found->edges())
          edges.push_back({universe.name(e.first), universe.name(e.second)});
        return py::cast(edges);
      },
      py::arg("vars"), py::arg("statements"),
      "Exhaustive-search ground truth; witness edges or None (up to 4 variables).");

  m.def("enumerate_dag_count", [](int n) { return dagiso::enumerate_dags(n).count(); },
        py::arg("n"), "Number of labeled dags on n nodes by enumeration (n <= 5).");
  m.def("equivalence_class_count",
        [](int n) { return static_cast<std::int64_t>(dagiso::equivalence_classes(n).size()); },
        py::arg("n"), "Number of (skeleton, vee set) classes on n nodes (n <= 5).");
  m.def("labeled_dag_count", &dagiso::labeled_dag_count, py::arg("n"),
        "Labeled-dag count by the independent recurrence.");
}
