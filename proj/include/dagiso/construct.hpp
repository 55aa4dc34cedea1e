#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include <dagiso/graph.hpp>
#include <dagiso/model.hpp>
#include <dagiso/trace.hpp>

namespace dagiso {

/// Separator witness S(a,b) for every nonadjacent skeleton pair; keys are
/// (min,max) pairs and S(a,b) never contains a or b.
struct SeparatorTable {
  std::map<Edge, VarSet> separators;

  std::optional<VarSet> find(VarId a, VarId b) const {
    auto it = separators.find({std::min(a, b), std::max(a, b)});
    if (it == separators.end()) return std::nullopt;
    return it->second;
  }
};

enum class FailReason {
  OrientationConflict,     // phase 1: vee orientation hit an opposing directed path
  NoExtension,             // phase 2: pdag admits no extension
  StatementNotInDag,       // phase 3 step 1: model statement fails in the dag
  DagStatementNotInModel,  // phase 3 step 2: dag implies a statement the model lacks
};

std::string to_string(FailReason reason);

struct Failure {
  int phase;
  FailReason reason;
  /// Human-readable rendering of the counterexample.
  std::string detail;
  /// Phase 1: the triple (a, b, c) whose vee could not be oriented.
  std::optional<Vee> triple;
  /// Phase 3: the offending statement.
  std::optional<Statement> counterexample;
  /// Fail-fast mode only: the verdict leans on the no-backtracking
  /// conjecture because choices were on the stack when closure failed.
  bool conjecture_relied = false;
};

/// Outcome of the full pipeline: a witness dag (phase 3 passed on it), or
/// the earliest failing phase.
struct Decision {
  std::variant<Dag, Failure> outcome;
  Trace trace;

  bool is_witness() const { return std::holds_alternative<Dag>(outcome); }
  const Dag& witness() const { return std::get<Dag>(outcome); }
  const Failure& failure() const { return std::get<Failure>(outcome); }
};

enum class Phase2Mode { Backtrack, FailFast };

struct Phase1Result {
  Pdag graph;
  SeparatorTable separators;
};

/// Phase 1: skeleton from separator queries, then vee orientation. The
/// model is expected to be closed; the skeleton has an edge exactly where
/// no separator exists, and for every nonadjacent pair the first witness
/// decides every common neighbor's orientation.
std::variant<Phase1Result, Failure> phase1(const DependencyModel& m, Trace* trace = nullptr);

/// Phase 2: extend a pdag to a dag with the same skeleton and vee set.
/// Backtrack mode searches exhaustively; fail-fast mode declares failure on
/// the first unsuccessful closure, relying on the conjecture that the four
/// rules make backtracking unnecessary.
std::variant<Dag, Failure> phase2(const Pdag& g, Phase2Mode mode = Phase2Mode::Backtrack,
                                  Trace* trace = nullptr);

/// Phase 3: the dag is consistent with the model. Step 1 checks every model
/// statement (basis only, for closed-basis models) by d-separation; step 2
/// checks that each node's independence from its predecessors given its
/// parents is in the model. Returns the failure, or nullopt on pass.
std::optional<Failure> phase3(const Dag& d, const DependencyModel& m, Trace* trace = nullptr);

/// phase3 with a caller-chosen node order (must be topological for d); the
/// verdict is order-independent, which the test suite exercises directly.
std::optional<Failure> phase3_with_order(const Dag& d, const DependencyModel& m,
                                         std::span<const VarId> order,
                                         Trace* trace = nullptr);

/// The full pipeline. Witness if and only if the model is dag-isomorphic
/// (backtrack mode).
Decision decide(const DependencyModel& m, Phase2Mode mode = Phase2Mode::Backtrack,
                bool with_trace = false);

}  // namespace dagiso
