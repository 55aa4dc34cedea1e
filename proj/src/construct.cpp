#include <dagiso/construct.hpp>

#include <bit>

#include <dagiso/dsep.hpp>
#include <dagiso/errors.hpp>

namespace dagiso {

std::string to_string(FailReason reason) {
  switch (reason) {
    case FailReason::OrientationConflict:
      return "orientation-conflict";
    case FailReason::NoExtension:
      return "no-extension";
    case FailReason::StatementNotInDag:
      return "statement-not-in-dag";
    case FailReason::DagStatementNotInModel:
      return "dag-statement-not-in-model";
  }
  return "unknown";
}

namespace {

void emit(Trace* trace, TraceEvent event) {
  if (trace) trace->push_back(std::move(event));
}

void emit_verdict(Trace* trace, int phase, bool pass, std::string note = {}) {
  TraceEvent e{TraceKind::PhaseVerdict};
  e.phase = phase;
  e.pass = pass;
  e.note = std::move(note);
  emit(trace, std::move(e));
}

}  // namespace

std::variant<Phase1Result, Failure> phase1(const DependencyModel& m, Trace* trace) {
  const Universe& universe = m.universe();
  const int n = universe.size();

  // Step 1: an edge survives exactly where no separator statement exists.
  Pdag g(n);
  SeparatorTable table;
  for (VarId a = 0; a < n; ++a) {
    for (VarId b = a + 1; b < n; ++b) {
      if (auto sep = m.find_separator(a, b)) {
        table.separators[{a, b}] = *sep;
        TraceEvent e{TraceKind::EdgeRemoved};
        e.a = a;
        e.b = b;
        e.set = *sep;
        emit(trace, std::move(e));
      } else {
        g.add_undirected(a, b);
      }
    }
  }

  // Step 2: for every separated pair, every common neighbor left out of the
  // witness set is a collider. The first witness decides; for a
  // dag-isomorphic model every witness of the pair agrees on each common
  // neighbor, so nothing more needs to be consulted.
  for (const auto& [pair, sep] : table.separators) {
    const auto [a, c] = pair;
    std::uint64_t common = g.adjacency_mask(a) & g.adjacency_mask(c);
    for (std::uint64_t mask = common; mask != 0; mask &= mask - 1) {
      VarId b = std::countr_zero(mask);
      if (sep.contains(b)) continue;
      if (has_directed_path(g, b, a) || has_directed_path(g, b, c)) {
        Failure f{1, FailReason::OrientationConflict,
                  "cannot orient " + universe.name(a) + "->" + universe.name(b) + "<-" +
                      universe.name(c) + ": a directed path from " + universe.name(b) +
                      " back to " + universe.name(a) + " or " + universe.name(c) +
                      " already exists"};
        f.triple = make_vee(a, b, c);
        emit_verdict(trace, 1, false, f.detail);
        return f;
      }
      g.orient(a, b);
      g.orient(c, b);
      TraceEvent e{TraceKind::VeeOriented};
      e.a = a;
      e.b = b;
      e.c = c;
      emit(trace, std::move(e));
    }
  }

  emit_verdict(trace, 1, true);
  return Phase1Result{std::move(g), std::move(table)};
}

namespace {

// The working graph stays consistent iff its directed part is acyclic and
// it has grown no vee outside the reference set. Vees never disappear under
// orientation, so a fully directed consistent graph has exactly the
// reference vee set.
bool consistent_with(const Pdag& g, const std::set<Vee>& reference) {
  if (g.has_directed_cycle()) return false;
  for (const Vee& v : vee_structures(g))
    if (!reference.count(v)) return false;
  return true;
}

// Orients tail->head, reports the result, and checks consistency.
bool apply_orientation(Pdag& g, VarId tail, VarId head, const std::set<Vee>& reference,
                       Trace* trace, TraceKind kind, int rule = 0) {
  g.orient(tail, head);
  TraceEvent e{kind};
  e.a = tail;
  e.b = head;
  e.rule = rule;
  emit(trace, std::move(e));
  return consistent_with(g, reference);
}

// Rule 1: a->b, b-c, a and c nonadjacent  =>  b->c; directing b-c the other
// way would create the vee a->b<-c.
int rule1(Pdag& g, const std::set<Vee>& reference, Trace* trace) {
  for (VarId b = 0; b < g.node_count(); ++b) {
    for (std::uint64_t ma = g.parents_mask(b); ma != 0; ma &= ma - 1) {
      VarId a = std::countr_zero(ma);
      for (std::uint64_t mc = g.undirected_mask(b); mc != 0; mc &= mc - 1) {
        VarId c = std::countr_zero(mc);
        if (c == a || g.adjacent(a, c)) continue;
        return apply_orientation(g, b, c, reference, trace, TraceKind::RuleFired, 1) ? 1 : -1;
      }
    }
  }
  return 0;
}

// Rule 2: a->b->c with a-c undirected  =>  a->c, else the cycle [abca].
int rule2(Pdag& g, const std::set<Vee>& reference, Trace* trace) {
  for (VarId a = 0; a < g.node_count(); ++a) {
    for (std::uint64_t mb = g.children_mask(a); mb != 0; mb &= mb - 1) {
      VarId b = std::countr_zero(mb);
      std::uint64_t targets = g.children_mask(b) & g.undirected_mask(a);
      if (targets != 0) {
        VarId c = std::countr_zero(targets);
        return apply_orientation(g, a, c, reference, trace, TraceKind::RuleFired, 2) ? 1 : -1;
      }
    }
  }
  return 0;
}

// Rule 3: b-a, b-c, b-d undirected, a->d and c->d directed, a and c
// nonadjacent  =>  b->d. Directing d->b forces a->b (cycle [adba] otherwise),
// and then b-c can close neither way: b->c cycles through [bcdb] and c->b
// creates the vee a->b<-c.
int rule3(Pdag& g, const std::set<Vee>& reference, Trace* trace) {
  for (VarId b = 0; b < g.node_count(); ++b) {
    for (std::uint64_t md = g.undirected_mask(b); md != 0; md &= md - 1) {
      VarId d = std::countr_zero(md);
      std::uint64_t spouses = g.undirected_mask(b) & g.parents_mask(d);
      for (std::uint64_t ma = spouses; ma != 0; ma &= ma - 1) {
        VarId a = std::countr_zero(ma);
        for (std::uint64_t mc = ma & (ma - 1); mc != 0; mc &= mc - 1) {
          VarId c = std::countr_zero(mc);
          if (g.adjacent(a, c)) continue;
          return apply_orientation(g, b, d, reference, trace, TraceKind::RuleFired, 3) ? 1 : -1;
        }
      }
    }
  }
  return 0;
}

// Rule 4: a-b, b-c, c-d undirected, d->a directed, b and d nonadjacent
// =>  a->b and c->b. b->a would create the vee b->a<-d; with a->b fixed,
// b->c forces the cycle [cdabc] or the vee b->c<-d through c-d.
int rule4(Pdag& g, const std::set<Vee>& reference, Trace* trace) {
  for (VarId b = 0; b < g.node_count(); ++b) {
    for (std::uint64_t ma = g.undirected_mask(b); ma != 0; ma &= ma - 1) {
      VarId a = std::countr_zero(ma);
      for (std::uint64_t mc = g.undirected_mask(b); mc != 0; mc &= mc - 1) {
        VarId c = std::countr_zero(mc);
        if (c == a) continue;
        std::uint64_t ds = g.undirected_mask(c) & g.parents_mask(a) & ~g.adjacency_mask(b);
        if (ds == 0) continue;
        if (!apply_orientation(g, a, b, reference, trace, TraceKind::RuleFired, 4)) return -1;
        return apply_orientation(g, c, b, reference, trace, TraceKind::RuleFired, 4) ? 1 : -1;
      }
    }
  }
  return 0;
}

// Rules 1..4 round-robin to fixpoint. False when some forced orientation
// created a directed cycle or a vee outside the reference set.
bool close_rules(Pdag& g, const std::set<Vee>& reference, Trace* trace) {
  while (true) {
    int fired = rule1(g, reference, trace);
    if (fired == 0) fired = rule2(g, reference, trace);
    if (fired == 0) fired = rule3(g, reference, trace);
    if (fired == 0) fired = rule4(g, reference, trace);
    if (fired == 0) return true;
    if (fired < 0) return false;
  }
}

struct ChoiceFrame {
  Edge edge;      // (tail, head) as first applied
  Pdag snapshot;  // state before either direction was applied
  bool reversed_tried = false;
};

// Free-choice selection. A node with no remaining directed out-edge whose
// undirected neighbors are each adjacent to the rest of its neighborhood
// can absorb all its undirected edges as a sink of some extension, so
// orienting one of them toward it never needs to be revoked; settled nodes
// are peeled off until such a node with an undirected edge turns up. When
// no node qualifies the pdag has no extension, and the lex-first fallback
// lets the search discover that. Requires an undirected edge to exist.
Edge choose_orientation(const Pdag& g) {
  std::uint64_t removed = 0;
  while (true) {
    VarId candidate = -1;
    for (VarId x = 0; x < g.node_count() && candidate < 0; ++x) {
      if ((removed >> x) & 1u) continue;
      if ((g.children_mask(x) & ~removed) != 0) continue;
      std::uint64_t und = g.undirected_mask(x) & ~removed;
      std::uint64_t adj = g.adjacency_mask(x) & ~removed;
      bool eligible = true;
      for (std::uint64_t m = und; m != 0 && eligible; m &= m - 1) {
        VarId y = std::countr_zero(m);
        if ((adj & ~g.adjacency_mask(y) & ~(std::uint64_t{1} << y)) != 0) eligible = false;
      }
      if (eligible) candidate = x;
    }
    if (candidate < 0) return *g.first_undirected_edge();
    std::uint64_t und = g.undirected_mask(candidate) & ~removed;
    if (und != 0) return Edge{std::countr_zero(und), candidate};
    removed |= std::uint64_t{1} << candidate;
  }
}

}  // namespace

std::variant<Dag, Failure> phase2(const Pdag& g, Phase2Mode mode, Trace* trace) {
  const std::set<Vee> reference = vee_structures(g);
  Pdag working = g;
  std::vector<ChoiceFrame> stack;

  bool closed_ok = true;
  while (true) {
    if (closed_ok) closed_ok = close_rules(working, reference, trace);

    if (closed_ok) {
      if (working.fully_directed()) {
        emit_verdict(trace, 2, true);
        return working.to_dag();
      }
      Edge choice = choose_orientation(working);
      stack.push_back(ChoiceFrame{choice, working, false});
      closed_ok = apply_orientation(working, choice.first, choice.second, reference, trace,
                                    TraceKind::ChoicePushed);
      continue;
    }

    // Unsuccessful closure.
    if (mode == Phase2Mode::FailFast) {
      Failure f{2, FailReason::NoExtension,
                stack.empty()
                    ? "forced closure of the pdag creates a directed cycle or a new vee"
                    : "fail-fast: first unsuccessful closure after a free choice"};
      f.conjecture_relied = !stack.empty();
      emit_verdict(trace, 2, false, f.detail);
      return f;
    }

    while (!stack.empty()) {
      ChoiceFrame& top = stack.back();
      if (!top.reversed_tried) {
        top.reversed_tried = true;
        working = top.snapshot;
        closed_ok = apply_orientation(working, top.edge.second, top.edge.first, reference,
                                      trace, TraceKind::ChoicePushed);
        break;
      }
      TraceEvent e{TraceKind::FramePopped};
      e.a = top.edge.first;
      e.b = top.edge.second;
      emit(trace, std::move(e));
      stack.pop_back();
    }
    if (stack.empty() && !closed_ok) {
      Failure f{2, FailReason::NoExtension, "the pdag has no dag extension"};
      emit_verdict(trace, 2, false, f.detail);
      return f;
    }
  }
}

std::optional<Failure> phase3_with_order(const Dag& d, const DependencyModel& m,
                                         std::span<const VarId> order, Trace* trace) {
  const Universe& universe = m.universe();
  if (universe.size() != d.node_count())
    throw NodeSetMismatch("model universe does not match the dag");
  if (static_cast<int>(order.size()) != d.node_count())
    throw Error("node order must cover every node exactly once");

  // Step 1: every model statement must hold in the dag. For a closed-basis
  // model the basis suffices: d-separation obeys the closure axioms, so a
  // represented basis forces the whole closure to be represented.
  const auto& to_check =
      m.origin() == ModelOrigin::ClosedBasis ? m.basis() : m.statements();
  for (const Statement& s : to_check) {
    if (!d_separated(d, DsepQuery{s.lhs, s.rhs, s.cond})) {
      Failure f{3, FailReason::StatementNotInDag,
                format_statement(s, universe) + " does not hold in the dag"};
      f.counterexample = s;
      emit_verdict(trace, 3, false, f.detail);
      return f;
    }
  }

  // Step 2: walking the order, each node is independent of its earlier
  // non-parents given its parents; all of those statements must be in the
  // model. An empty remainder makes the statement vacuous.
  VarSet preceding;
  for (VarId a : order) {
    if (preceding.contains(a)) throw Error("node order repeats a node");
    VarSet parents = VarSet::from_bits(d.parents_mask(a));
    if (!parents.subset_of(preceding))
      throw Error("node order is not topological for the dag");
    VarSet rest = preceding - parents;
    if (!rest.empty()) {
      Statement s = canonicalize(Statement{VarSet::single(a), rest, parents}, universe);
      if (!m.contains(s)) {
        Failure f{3, FailReason::DagStatementNotInModel,
                  "the dag implies " + format_statement(s, universe) +
                      ", which is not in the model"};
        f.counterexample = s;
        emit_verdict(trace, 3, false, f.detail);
        return f;
      }
    }
    preceding = preceding.with(a);
  }

  // Closure audit for explicit models. Steps 1 and 2 certify consistency
  // only for models closed under the axioms; a model that is not closed
  // equals no dag's d-separation model. With step 1 passed, every model
  // statement holds in d, d-separation obeys the axioms, so a one-step
  // derivable statement missing from the model also holds in d: a concrete
  // dag-implied statement outside the model. Closed-basis models are
  // closed by construction.
  if (m.origin() == ModelOrigin::Explicit) {
    if (auto s = find_closure_violation(m.statements(), universe)) {
      Failure f{3, FailReason::DagStatementNotInModel,
                "the dag implies " + format_statement(*s, universe) +
                    ", which the model omits although the axioms derive it"};
      f.counterexample = *s;
      emit_verdict(trace, 3, false, f.detail);
      return f;
    }
  }

  emit_verdict(trace, 3, true);
  return std::nullopt;
}

std::optional<Failure> phase3(const Dag& d, const DependencyModel& m, Trace* trace) {
  std::vector<VarId> order = topological_order(d);
  return phase3_with_order(d, m, order, trace);
}

Decision decide(const DependencyModel& m, Phase2Mode mode, bool with_trace) {
  Trace events;
  Trace* trace = with_trace ? &events : nullptr;

  auto p1 = phase1(m, trace);
  if (auto* fail = std::get_if<Failure>(&p1))
    return Decision{std::move(*fail), std::move(events)};
  auto& built = std::get<Phase1Result>(p1);

  auto p2 = phase2(built.graph, mode, trace);
  if (auto* fail = std::get_if<Failure>(&p2))
    return Decision{std::move(*fail), std::move(events)};
  Dag dag = std::move(std::get<Dag>(p2));

  if (auto fail = phase3(dag, m, trace))
    return Decision{std::move(*fail), std::move(events)};
  return Decision{std::move(dag), std::move(events)};
}

}  // namespace dagiso
