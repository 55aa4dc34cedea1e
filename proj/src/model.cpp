#include <dagiso/model.hpp>

#include <deque>

namespace dagiso {

DependencyModel DependencyModel::from_statements(Universe universe,
                                                 const std::vector<Statement>& statements) {
  std::set<Statement> canonical;
  for (const Statement& s : statements) canonical.insert(canonicalize(s, universe));
  return DependencyModel(std::move(universe), std::move(canonical), ModelOrigin::Explicit, {});
}

bool DependencyModel::contains(const Statement& s) const {
  return statements_.count(canonicalize(s, universe_)) > 0;
}

void DependencyModel::check_pair(VarId a, VarId b) const {
  if (a == b) throw InvalidQuery("separator query requires two distinct variables");
  universe_.name(a);  // range checks
  universe_.name(b);
}

std::optional<VarSet> DependencyModel::find_separator(VarId a, VarId b) const {
  if (origin_ != ModelOrigin::ClosedBasis) return find_separator_by_scan(a, b);
  check_pair(a, b);
  // Basis shortcut: I(aA, bB | C) in the basis puts I(a, b | C u A u B) in
  // the closure (peel A and B off by weak union), and conversely any
  // separator in the closure traces back to such a basis statement.
  for (const Statement& s : basis_) {
    if (s.lhs.contains(a) && s.rhs.contains(b))
      return s.cond | s.lhs.without(a) | s.rhs.without(b);
    if (s.lhs.contains(b) && s.rhs.contains(a))
      return s.cond | s.lhs.without(b) | s.rhs.without(a);
  }
  return std::nullopt;
}

std::optional<VarSet> DependencyModel::find_separator_by_scan(VarId a, VarId b) const {
  check_pair(a, b);
  VarSet pair_lo = VarSet::single(std::min(a, b));
  VarSet pair_hi = VarSet::single(std::max(a, b));
  for (const Statement& s : statements_) {
    if (s.lhs == pair_lo && s.rhs == pair_hi) return s.cond;
  }
  return std::nullopt;
}

namespace {

struct SideView {
  VarSet w, r;
};

// Every statement one application of decomposition or weak union away from
// canonical s, under both side assignments (symmetry is the canonical
// form). fn returns false to stop; the return value reports completion.
template <typename Fn>
bool unary_consequences(const Statement& s, const Universe& universe, Fn&& fn) {
  const SideView views[2] = {{s.lhs, s.rhs}, {s.rhs, s.lhs}};
  for (const SideView& view : views) {
    const std::uint64_t mask = view.r.bits();
    for (std::uint64_t sub = mask & (mask - 1); sub != 0; sub = (sub - 1) & mask) {
      VarSet kept = VarSet::from_bits(sub);
      VarSet moved = view.r - kept;
      // I(W, R | C) yields I(W, R' | C) and I(W, R' | C u (R \ R')).
      if (!fn(canonicalize(Statement{view.w, kept, s.cond}, universe))) return false;
      if (!fn(canonicalize(Statement{view.w, kept, s.cond | moved}, universe))) return false;
    }
  }
  return true;
}

// Contraction conclusions of the unordered statement pair {s, t}:
// I(W, Y | Z) and I(W, X | Y u Z) combine to I(W, X u Y | Z).
template <typename Fn>
bool contraction_consequences(const Statement& s, const Statement& t,
                              const Universe& universe, Fn&& fn) {
  const SideView s_views[2] = {{s.lhs, s.rhs}, {s.rhs, s.lhs}};
  const SideView t_views[2] = {{t.lhs, t.rhs}, {t.rhs, t.lhs}};
  for (const SideView& sv : s_views) {
    for (const SideView& tv : t_views) {
      if (sv.w != tv.w) continue;
      // s as I(W, Y | Z), t as I(W, X | Y u Z).
      if (t.cond == (sv.r | s.cond))
        if (!fn(canonicalize(Statement{sv.w, sv.r | tv.r, s.cond}, universe))) return false;
      // t as I(W, Y | Z), s as I(W, X | Y u Z).
      if (s.cond == (tv.r | t.cond))
        if (!fn(canonicalize(Statement{sv.w, sv.r | tv.r, t.cond}, universe))) return false;
    }
  }
  return true;
}

}  // namespace

DependencyModel close_semigraphoid(const std::vector<Statement>& basis,
                                   const Universe& universe, int universe_cap) {
  if (universe.size() > universe_cap)
    throw UniverseTooLarge("closure mode supports at most " + std::to_string(universe_cap) +
                           " variables (the closure can grow exponentially); got " +
                           std::to_string(universe.size()));

  std::set<Statement> closed;
  std::set<Statement> canonical_basis;
  std::deque<Statement> work;

  auto add = [&](const Statement& s) {
    if (closed.insert(s).second) work.push_back(s);
    return true;  // never stop early
  };

  for (const Statement& s : basis) {
    Statement c = canonicalize(s, universe);
    canonical_basis.insert(c);
    add(c);
  }

  // Worklist fixpoint: each popped statement contributes its unary
  // consequences and is paired against everything derived so far for
  // contraction. Inserting while iterating `closed` is safe for std::set;
  // statements inserted behind the iterator are paired when popped.
  while (!work.empty()) {
    Statement s = work.front();
    work.pop_front();
    unary_consequences(s, universe, add);
    for (const Statement& t : closed) contraction_consequences(s, t, universe, add);
  }

  return DependencyModel(universe, std::move(closed), ModelOrigin::ClosedBasis,
                         std::move(canonical_basis));
}

std::optional<Statement> find_closure_violation(const std::set<Statement>& statements,
                                                const Universe& universe) {
  std::optional<Statement> violation;
  auto check = [&](const Statement& derived) {
    if (statements.count(derived)) return true;
    violation = derived;
    return false;
  };
  for (const Statement& s : statements) {
    if (!unary_consequences(s, universe, check)) return violation;
    for (const Statement& t : statements)
      if (!contraction_consequences(s, t, universe, check)) return violation;
  }
  return std::nullopt;
}

}  // namespace dagiso
