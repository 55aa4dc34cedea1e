#pragma once

#include <iosfwd>
#include <set>
#include <string>

#include <dagiso/construct.hpp>
#include <dagiso/model.hpp>

namespace dagiso {

/// Result of parsing a statement file: the declared universe and the
/// canonical, deduplicated statements.
struct ParsedModel {
  Universe universe;
  std::set<Statement> statements;
};

/// Line-based grammar:
///
///   # comment until end of line
///   vars: a b c d
///   I(a ; c | b)
///   I(a, b ; c |)
///
/// One `vars:` line declares the universe and must precede all statements;
/// statement sides are comma-or-space separated identifiers and the
/// conditioning list may be empty.
ParsedModel parse_model_text(const std::string& text);

/// Renders a model back into the statement-file grammar; parsing the result
/// reproduces the same universe and statement set.
std::string format_model_text(const Universe& universe, const std::set<Statement>& statements);

/// DOT documents. Both graphs emit a digraph; undirected pdag edges carry
/// dir=none so one document kind covers traces and witnesses.
std::string to_dot(const Dag& d, const Universe& universe);
std::string to_dot(const Pdag& g, const Universe& universe);

/// Decision rendered as a JSON record with fixed key order and sorted edge
/// lists, suitable for byte-level comparison.
std::string decision_to_json(const Decision& decision, const Universe& universe,
                             bool include_trace);

enum class EmitFormat { Json, Dot, Text };

struct RunConfig {
  std::string input_path;  // empty or "-" reads standard input
  bool basis_mode = false;
  Phase2Mode phase2_mode = Phase2Mode::Backtrack;
  EmitFormat emit = EmitFormat::Text;
  bool trace = false;
  bool check_oracle = false;  // requires a universe of at most 4 variables
  int closure_cap = kDefaultClosureCap;
};

/// Parses, builds the model (closing the basis in basis mode), decides, and
/// emits. Exit status: 0 witness found, 1 not dag-isomorphic, 2 input or
/// configuration error, 3 oracle disagreement under check_oracle.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dagiso
