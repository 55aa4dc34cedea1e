#include <dagiso/dsep.hpp>

#include <bit>
#include <vector>

#include <dagiso/errors.hpp>

namespace dagiso {

void validate_query(const Dag& d, const DsepQuery& q) {
  VarSet nodes =
      d.node_count() == VarSet::kMaxVars
          ? VarSet::from_bits(~std::uint64_t{0})
          : VarSet::from_bits((std::uint64_t{1} << d.node_count()) - 1);
  if (!q.x.subset_of(nodes) || !q.y.subset_of(nodes) || !q.z.subset_of(nodes))
    throw InvalidQuery("query ranges over nodes outside the graph");
  if (q.x.empty() || q.y.empty()) throw InvalidQuery("query sides must be nonempty");
  if (q.x.intersects(q.y) || q.x.intersects(q.z) || q.y.intersects(q.z))
    throw InvalidQuery("query sets must be pairwise disjoint");
}

bool d_separated(const Dag& d, const DsepQuery& q) {
  validate_query(d, q);

  // Head-to-head nodes pass the ball only when they are in Z or have a
  // directed path into Z; every other node blocks when in Z. Walk states
  // record how a node was entered: through an arrow into it ("in") or
  // through one of its outgoing arrows ("out").
  const std::uint64_t active = ancestors_or_self(d, q.z).bits();
  const std::uint64_t blocked = q.z.bits();
  const std::uint64_t target = q.y.bits();

  std::uint64_t reached_in = 0;
  std::uint64_t reached_out = 0;

  // Endpoint edges are unconstrained.
  for (VarId x : q.x.to_vector()) {
    reached_in |= d.children_mask(x);
    reached_out |= d.parents_mask(x);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    if ((reached_in | reached_out) & target) return false;
    for (VarId w = 0; w < d.node_count(); ++w) {
      const std::uint64_t bit = std::uint64_t{1} << w;
      std::uint64_t add_in = 0;
      std::uint64_t add_out = 0;
      if (reached_in & bit) {
        if (!(blocked & bit)) add_in |= d.children_mask(w);   // chain  -> w ->
        if (active & bit) add_out |= d.parents_mask(w);       // collider -> w <-
      }
      if (reached_out & bit) {
        if (!(blocked & bit)) {
          add_in |= d.children_mask(w);   // fork  <- w ->
          add_out |= d.parents_mask(w);   // chain <- w <-
        }
      }
      if (add_in & ~reached_in) {
        reached_in |= add_in;
        changed = true;
      }
      if (add_out & ~reached_out) {
        reached_out |= add_out;
        changed = true;
      }
    }
  }
  return ((reached_in | reached_out) & target) == 0;
}

namespace {

// Activeness of one concrete path: every head-to-head interior node must be
// in Z or reach Z by a directed path; every other interior node must avoid Z.
bool path_active(const Dag& d, const std::vector<VarId>& path, VarSet z,
                 std::uint64_t anc_z) {
  for (size_t i = 1; i + 1 < path.size(); ++i) {
    bool head_to_head =
        d.has_directed(path[i - 1], path[i]) && d.has_directed(path[i + 1], path[i]);
    if (head_to_head) {
      if (!((anc_z >> path[i]) & 1u)) return false;
    } else {
      if (z.contains(path[i])) return false;
    }
  }
  return true;
}

struct PathSearch {
  const Dag& d;
  VarSet y;
  VarSet z;
  std::uint64_t anc_z;
  std::vector<VarId> path;
  std::uint64_t on_path = 0;

  // Extends the current path in all directions; reports true as soon as an
  // active path ending in Y is found. Paths may continue through Y, so a
  // hit is checked at every Y visit, not only at dead ends.
  bool extend() {
    VarId tip = path.back();
    if (path.size() > 1 && y.contains(tip) && path_active(d, path, z, anc_z)) return true;
    for (std::uint64_t m = d.adjacency_mask(tip) & ~on_path; m != 0; m &= m - 1) {
      VarId next = std::countr_zero(m);
      path.push_back(next);
      on_path |= std::uint64_t{1} << next;
      bool found = extend();
      on_path &= ~(std::uint64_t{1} << next);
      path.pop_back();
      if (found) return true;
    }
    return false;
  }
};

}  // namespace

bool d_separated_naive(const Dag& d, const DsepQuery& q) {
  validate_query(d, q);
  std::uint64_t anc_z = ancestors_or_self(d, q.z).bits();
  for (VarId x : q.x.to_vector()) {
    PathSearch search{d, q.y, q.z, anc_z};
    search.path.push_back(x);
    search.on_path = std::uint64_t{1} << x;
    if (search.extend()) return false;
  }
  return true;
}

DependencyModel full_model(const Dag& d, const Universe& universe, int node_cap) {
  if (universe.size() != d.node_count())
    throw NodeSetMismatch("universe size does not match the dag");
  if (d.node_count() > node_cap)
    throw UniverseTooLarge("full model extraction supports at most " +
                           std::to_string(node_cap) + " nodes; got " +
                           std::to_string(d.node_count()));

  const int n = d.node_count();
  std::vector<Statement> found;
  // Assign each variable to one of: outside, lhs, rhs, cond.
  std::vector<int> role(n, 0);
  while (true) {
    VarSet lhs, rhs, cond;
    for (int v = 0; v < n; ++v) {
      if (role[v] == 1) lhs = lhs.with(v);
      if (role[v] == 2) rhs = rhs.with(v);
      if (role[v] == 3) cond = cond.with(v);
    }
    // Canonical representative only; the mirrored assignment is the same
    // statement.
    if (!lhs.empty() && !rhs.empty() && !VarSet::lex_less(rhs, lhs)) {
      if (d_separated(d, DsepQuery{lhs, rhs, cond})) found.push_back({lhs, rhs, cond});
    }
    int i = 0;
    while (i < n && role[i] == 3) role[i++] = 0;
    if (i == n) break;
    ++role[i];
  }
  return DependencyModel::from_statements(universe, found);
}

DependencyModel full_model(const Dag& d, int node_cap) {
  return full_model(d, default_universe(d.node_count()), node_cap);
}

}  // namespace dagiso
