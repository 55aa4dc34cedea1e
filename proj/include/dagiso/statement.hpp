#pragma once

#include <string>
#include <tuple>

#include <dagiso/varset.hpp>

namespace dagiso {

/// One conditional independence assertion I(lhs, rhs | cond) over pairwise
/// disjoint variable sets. A statement and its left/right mirror are the
/// same assertion; canonical form keeps lhs <= rhs under VarSet::lex_less,
/// so each assertion has exactly one stored representative.
struct Statement {
  VarSet lhs;
  VarSet rhs;
  VarSet cond;

  bool is_canonical() const { return !VarSet::lex_less(rhs, lhs); }

  friend bool operator==(const Statement& a, const Statement& b) = default;

  friend bool operator<(const Statement& a, const Statement& b) {
    if (a.lhs != b.lhs) return VarSet::lex_less(a.lhs, b.lhs);
    if (a.rhs != b.rhs) return VarSet::lex_less(a.rhs, b.rhs);
    if (a.cond != b.cond) return VarSet::lex_less(a.cond, b.cond);
    return false;
  }
};

/// Validates a raw statement against the universe and returns the
/// symmetry-normal representative.
inline Statement canonicalize(const Statement& raw, const Universe& universe) {
  VarSet declared = universe.all();
  if (!raw.lhs.subset_of(declared) || !raw.rhs.subset_of(declared) ||
      !raw.cond.subset_of(declared))
    throw UnknownVariable("statement ranges over undeclared variables");
  if (raw.lhs.empty() || raw.rhs.empty())
    throw EmptySide("statement sides must be nonempty");
  if (raw.lhs.intersects(raw.rhs) || raw.lhs.intersects(raw.cond) ||
      raw.rhs.intersects(raw.cond))
    throw OverlappingSets("statement sets must be pairwise disjoint");
  if (VarSet::lex_less(raw.rhs, raw.lhs)) return Statement{raw.rhs, raw.lhs, raw.cond};
  return raw;
}

/// "I(a,b ; c | d)"; empty conditioning set renders as "I(a ; b |)".
inline std::string format_statement(const Statement& s, const Universe& universe) {
  auto side = [&universe](VarSet set) {
    std::string out;
    bool first = true;
    for (VarId v : set.to_vector()) {
      if (!first) out += ", ";
      out += universe.name(v);
      first = false;
    }
    return out;
  };
  std::string out = "I(" + side(s.lhs) + " ; " + side(s.rhs) + " |";
  if (!s.cond.empty()) out += " " + side(s.cond);
  out += ")";
  return out;
}

}  // namespace dagiso
