#pragma once

#include <optional>
#include <set>
#include <vector>

#include <dagiso/statement.hpp>
#include <dagiso/varset.hpp>

namespace dagiso {

enum class ModelOrigin {
  Explicit,     // the statement list is the model
  ClosedBasis,  // the model is the semigraphoid closure of a basis
};

/// Closure mode refuses universes beyond this many variables unless the
/// caller raises the cap; closures grow exponentially with the universe.
inline constexpr int kDefaultClosureCap = 10;

/// A queryable collection of conditional independence statements over a
/// fixed universe. Statements are stored canonical and deduplicated, in
/// canonical statement order, so "the first statement found" is
/// deterministic across runs.
class DependencyModel {
 public:
  /// Builds an explicit model; statements are canonicalized and deduplicated.
  static DependencyModel from_statements(Universe universe,
                                         const std::vector<Statement>& statements);

  const Universe& universe() const { return universe_; }
  const std::set<Statement>& statements() const { return statements_; }
  ModelOrigin origin() const { return origin_; }

  /// The basis a ClosedBasis model was closed from; empty for explicit models.
  const std::set<Statement>& basis() const { return basis_; }

  /// Membership of a statement in the model (for ClosedBasis origin, in the
  /// materialized closure). The statement is canonicalized and validated
  /// against the universe first.
  bool contains(const Statement& s) const;

  /// Some S with I(a,b|S) in the model, or absent. ClosedBasis models use
  /// the basis shortcut: any basis statement I(aA, bB | C) yields the
  /// separator C u A u B without consulting the closure. The shortcut and
  /// the closure scan agree on presence; find_separator_by_scan exposes the
  /// scan route for cross-checking.
  std::optional<VarSet> find_separator(VarId a, VarId b) const;

  /// Exhaustive scan of the materialized statement set for the first
  /// singleton statement I(a,b|S) in canonical order.
  std::optional<VarSet> find_separator_by_scan(VarId a, VarId b) const;

  friend DependencyModel close_semigraphoid(const std::vector<Statement>& basis,
                                            const Universe& universe, int universe_cap);

 private:
  DependencyModel(Universe universe, std::set<Statement> statements, ModelOrigin origin,
                  std::set<Statement> basis)
      : universe_(std::move(universe)),
        statements_(std::move(statements)),
        origin_(origin),
        basis_(std::move(basis)) {}

  void check_pair(VarId a, VarId b) const;

  Universe universe_;
  std::set<Statement> statements_;
  ModelOrigin origin_;
  std::set<Statement> basis_;
};

/// Least fixpoint of the basis under symmetry, decomposition, weak union and
/// contraction, materialized as a ClosedBasis model. Throws UniverseTooLarge
/// when the universe exceeds the cap.
DependencyModel close_semigraphoid(const std::vector<Statement>& basis,
                                   const Universe& universe,
                                   int universe_cap = kDefaultClosureCap);

/// First statement derivable from the set by one axiom application but not
/// in the set, or nullopt when the set is closed. Never materializes the
/// closure, so it runs on universes of any size.
std::optional<Statement> find_closure_violation(const std::set<Statement>& statements,
                                                const Universe& universe);

}  // namespace dagiso
