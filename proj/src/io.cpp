#include <dagiso/io.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include <dagiso/errors.hpp>
#include <dagiso/oracle.hpp>

namespace dagiso {

namespace {

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool space_char(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Scanner over one line; columns are 1-based for diagnostics.
struct LineScanner {
  const std::string& text;
  int line_no;
  size_t pos = 0;

  void skip_spaces() {
    while (pos < text.size() && space_char(text[pos])) ++pos;
  }

  bool at_end() {
    skip_spaces();
    return pos >= text.size();
  }

  char peek() { return pos < text.size() ? text[pos] : '\0'; }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, line_no, static_cast<int>(pos) + 1);
  }

  void expect(char c) {
    skip_spaces();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string identifier() {
    skip_spaces();
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected an identifier");
    return text.substr(start, pos - start);
  }

  // Identifiers separated by commas and/or spaces, up to (not consuming)
  // one of the stop characters.
  std::vector<std::string> identifier_list(const std::string& stops) {
    std::vector<std::string> names;
    while (true) {
      skip_spaces();
      if (pos >= text.size() || stops.find(text[pos]) != std::string::npos) break;
      if (text[pos] == ',') {
        if (names.empty()) fail("expected an identifier before ','");
        ++pos;
        names.push_back(identifier());
        continue;
      }
      names.push_back(identifier());
    }
    return names;
  }
};

}  // namespace

ParsedModel parse_model_text(const std::string& text) {
  std::optional<Universe> universe;
  std::set<Statement> statements;

  std::istringstream stream(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    std::string line = raw_line.substr(0, raw_line.find('#'));
    LineScanner scan{line, line_no};
    if (scan.at_end()) continue;

    if (line.compare(scan.pos, 5, "vars:") == 0) {
      scan.pos += 5;
      if (universe) scan.fail("duplicate vars: line");
      std::vector<std::string> names = scan.identifier_list("");
      if (!scan.at_end()) scan.fail("unexpected trailing text");
      if (names.empty()) scan.fail("vars: line declares no variables");
      std::set<std::string> seen;
      for (const std::string& name : names)
        if (!seen.insert(name).second) scan.fail("duplicate variable '" + name + "'");
      if (static_cast<int>(names.size()) > VarSet::kMaxVars)
        scan.fail("too many variables (limit " + std::to_string(VarSet::kMaxVars) + ")");
      universe.emplace(names);
      continue;
    }

    if (!universe) scan.fail("a vars: line must precede all statements");

    scan.expect('I');
    scan.expect('(');
    std::vector<std::string> lhs = scan.identifier_list(";");
    if (lhs.empty()) scan.fail("expected at least one identifier");
    scan.expect(';');
    std::vector<std::string> rhs = scan.identifier_list("|");
    if (rhs.empty()) scan.fail("expected at least one identifier");
    scan.expect('|');
    std::vector<std::string> cond = scan.identifier_list(")");
    scan.expect(')');
    if (!scan.at_end()) scan.fail("unexpected trailing text");

    auto to_set = [&](const std::vector<std::string>& names) {
      VarSet set;
      for (const std::string& name : names) set = set.with(universe->id(name));
      return set;
    };
    statements.insert(
        canonicalize(Statement{to_set(lhs), to_set(rhs), to_set(cond)}, *universe));
  }

  if (!universe) throw ParseError("input declares no variables", std::max(line_no, 1), 1);
  return ParsedModel{std::move(*universe), std::move(statements)};
}

std::string format_model_text(const Universe& universe,
                              const std::set<Statement>& statements) {
  std::string out = "vars:";
  for (const std::string& name : universe.names()) out += " " + name;
  out += "\n";
  for (const Statement& s : statements) out += format_statement(s, universe) + "\n";
  return out;
}

namespace {

std::string dot_node(const std::string& name) { return "\"" + name + "\""; }

template <typename EdgeFn>
std::string dot_document(int n, const Universe& universe, EdgeFn&& edges) {
  std::string out = "digraph g {\n";
  for (int v = 0; v < n; ++v) out += "  " + dot_node(universe.name(v)) + ";\n";
  edges(out);
  out += "}\n";
  return out;
}

}  // namespace

std::string to_dot(const Dag& d, const Universe& universe) {
  return dot_document(d.node_count(), universe, [&](std::string& out) {
    for (const Edge& e : d.edges())
      out += "  " + dot_node(universe.name(e.first)) + " -> " +
             dot_node(universe.name(e.second)) + ";\n";
  });
}

std::string to_dot(const Pdag& g, const Universe& universe) {
  return dot_document(g.node_count(), universe, [&](std::string& out) {
    for (const Edge& e : g.directed_edges())
      out += "  " + dot_node(universe.name(e.first)) + " -> " +
             dot_node(universe.name(e.second)) + ";\n";
    for (const Edge& e : g.undirected_edges())
      out += "  " + dot_node(universe.name(e.first)) + " -> " +
             dot_node(universe.name(e.second)) + " [dir=none];\n";
  });
}

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson names_of(VarSet set, const Universe& universe) {
  OrderedJson arr = OrderedJson::array();
  for (VarId v : set.to_vector()) arr.push_back(universe.name(v));
  return arr;
}

OrderedJson event_to_json(const TraceEvent& event, const Universe& universe) {
  OrderedJson j;
  switch (event.kind) {
    case TraceKind::EdgeRemoved:
      j["event"] = "edge-removed";
      j["pair"] = {universe.name(event.a), universe.name(event.b)};
      j["separator"] = names_of(event.set.value_or(VarSet{}), universe);
      break;
    case TraceKind::VeeOriented:
      j["event"] = "vee-oriented";
      j["vee"] = {universe.name(event.a), universe.name(event.b), universe.name(event.c)};
      break;
    case TraceKind::RuleFired:
      j["event"] = "rule-fired";
      j["rule"] = event.rule;
      j["edge"] = {universe.name(event.a), universe.name(event.b)};
      break;
    case TraceKind::ChoicePushed:
      j["event"] = "choice-pushed";
      j["edge"] = {universe.name(event.a), universe.name(event.b)};
      break;
    case TraceKind::FramePopped:
      j["event"] = "frame-popped";
      j["edge"] = {universe.name(event.a), universe.name(event.b)};
      break;
    case TraceKind::PhaseVerdict:
      j["event"] = "phase-verdict";
      j["phase"] = event.phase;
      j["pass"] = event.pass;
      if (!event.pass) j["note"] = event.note;
      break;
  }
  return j;
}

OrderedJson decision_json(const Decision& decision, const Universe& universe,
                          bool include_trace) {
  OrderedJson j;
  if (decision.is_witness()) {
    j["decision"] = "witness";
    OrderedJson edges = OrderedJson::array();
    for (const Edge& e : decision.witness().edges())
      edges.push_back({universe.name(e.first), universe.name(e.second)});
    j["witness_edges"] = std::move(edges);
  } else {
    const Failure& f = decision.failure();
    j["decision"] = "fail";
    OrderedJson failure;
    failure["phase"] = f.phase;
    failure["reason"] = to_string(f.reason);
    failure["detail"] = f.detail;
    failure["conjecture_relied"] = f.conjecture_relied;
    j["failure"] = std::move(failure);
  }
  if (include_trace) {
    OrderedJson events = OrderedJson::array();
    for (const TraceEvent& e : decision.trace) events.push_back(event_to_json(e, universe));
    j["trace"] = std::move(events);
  }
  return j;
}

}  // namespace

std::string decision_to_json(const Decision& decision, const Universe& universe,
                             bool include_trace) {
  return decision_json(decision, universe, include_trace).dump(2) + "\n";
}

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void emit_text(const Decision& decision, const Universe& universe, bool with_trace,
               std::ostream& out) {
  if (with_trace)
    for (const TraceEvent& e : decision.trace) out << format_event(e, universe) << "\n";
  if (decision.is_witness()) {
    out << "dag-isomorphic: witness found\n";
    for (const Edge& e : decision.witness().edges())
      out << "  " << universe.name(e.first) << " -> " << universe.name(e.second) << "\n";
  } else {
    const Failure& f = decision.failure();
    out << "not dag-isomorphic: phase " << f.phase << " failed (" << to_string(f.reason)
        << "): " << f.detail << "\n";
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    ParsedModel parsed = parse_model_text(read_input(config.input_path));
    if (config.check_oracle && parsed.universe.size() > 4) {
      err << "error: --check-oracle supports at most 4 variables\n";
      return 2;
    }

    std::vector<Statement> listed(parsed.statements.begin(), parsed.statements.end());
    DependencyModel model =
        config.basis_mode
            ? close_semigraphoid(listed, parsed.universe, config.closure_cap)
            : DependencyModel::from_statements(parsed.universe, listed);

    Decision decision = decide(model, config.phase2_mode, config.trace);

    std::optional<bool> oracle_agrees;
    if (config.check_oracle) {
      auto ground_truth = is_dag_isomorphic_bruteforce(model, parsed.universe.size());
      bool agree = ground_truth.has_value() == decision.is_witness();
      if (agree && decision.is_witness()) agree = is_equivalent(decision.witness(), *ground_truth);
      oracle_agrees = agree;
    }

    switch (config.emit) {
      case EmitFormat::Json: {
        OrderedJson j = decision_json(decision, parsed.universe, config.trace);
        if (oracle_agrees) j["oracle_agrees"] = *oracle_agrees;
        out << j.dump(2) << "\n";
        break;
      }
      case EmitFormat::Dot: {
        if (decision.is_witness()) {
          out << to_dot(decision.witness(), parsed.universe);
        } else if (config.trace) {
          // The phase 1 pdag is the most informative graph on failure.
          auto p1 = phase1(model);
          if (auto* built = std::get_if<Phase1Result>(&p1))
            out << to_dot(built->graph, parsed.universe);
          else
            out << "digraph g {\n}\n";
        } else {
          out << "digraph g {\n}\n";
        }
        break;
      }
      case EmitFormat::Text: {
        emit_text(decision, parsed.universe, config.trace, out);
        if (oracle_agrees)
          out << "oracle: " << (*oracle_agrees ? "agrees" : "DISAGREES") << "\n";
        break;
      }
    }

    if (oracle_agrees && !*oracle_agrees) return 3;
    return decision.is_witness() ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dagiso
