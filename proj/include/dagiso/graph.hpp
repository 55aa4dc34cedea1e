#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <dagiso/varset.hpp>

namespace dagiso {

/// Node pair; unordered pairs are stored (min,max).
using Edge = std::pair<VarId, VarId>;

/// a -> center <- c with nonadjacent endpoints; endpoints are unordered and
/// kept as left < right.
struct Vee {
  VarId left;
  VarId center;
  VarId right;

  friend bool operator==(const Vee&, const Vee&) = default;
  friend bool operator<(const Vee& a, const Vee& b) {
    if (a.center != b.center) return a.center < b.center;
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
};

inline Vee make_vee(VarId endpoint_a, VarId center, VarId endpoint_b) {
  if (endpoint_a > endpoint_b) std::swap(endpoint_a, endpoint_b);
  return Vee{endpoint_a, center, endpoint_b};
}

/// Fully directed acyclic graph over nodes 0..n-1. Adjacency is kept as one
/// bit row per node for both directions, so neighborhood queries are single
/// mask operations.
class Dag {
 public:
  explicit Dag(int n);

  /// Validates acyclicity eagerly; throws CycleDetected.
  static Dag from_edges(int n, const std::vector<Edge>& directed);

  int node_count() const { return n_; }

  /// Adds tail->head. Rejects self-loops and duplicate or opposing edges,
  /// but not cycles; callers that build incrementally filter with
  /// is_acyclic (the enumeration oracle depends on that split).
  void add_edge(VarId tail, VarId head);

  bool has_directed(VarId tail, VarId head) const {
    check_node(tail);
    check_node(head);
    return (children_[tail] >> head) & 1u;
  }

  bool adjacent(VarId a, VarId b) const {
    check_node(a);
    check_node(b);
    return ((children_[a] | parents_[a]) >> b) & 1u;
  }

  bool is_acyclic() const;

  std::uint64_t children_mask(VarId v) const {
    check_node(v);
    return children_[v];
  }
  std::uint64_t parents_mask(VarId v) const {
    check_node(v);
    return parents_[v];
  }
  std::uint64_t undirected_mask(VarId) const { return 0; }
  std::uint64_t adjacency_mask(VarId v) const {
    check_node(v);
    return children_[v] | parents_[v];
  }

  /// Directed edges sorted by (tail, head).
  std::vector<Edge> edges() const;
  int edge_count() const;

  friend bool operator==(const Dag& a, const Dag& b) = default;

 private:
  void check_node(VarId v) const;

  int n_;
  std::vector<std::uint64_t> children_;
  std::vector<std::uint64_t> parents_;
};

/// Mixed directed/undirected graph whose directed part is acyclic at
/// construction. Orientation steps during closure may transiently create
/// directed cycles; has_directed_cycle exposes the check the closure uses.
class Pdag {
 public:
  explicit Pdag(int n);

  /// Validates the invariants eagerly: at most one edge per node pair, no
  /// self-loops, no directed cycle.
  static Pdag from_edges(int n, const std::vector<Edge>& directed,
                         const std::vector<Edge>& undirected);

  int node_count() const { return n_; }

  void add_directed(VarId tail, VarId head);
  void add_undirected(VarId a, VarId b);

  bool has_directed(VarId tail, VarId head) const {
    check_node(tail);
    check_node(head);
    return (children_[tail] >> head) & 1u;
  }

  bool has_undirected(VarId a, VarId b) const {
    check_node(a);
    check_node(b);
    return (undirected_[a] >> b) & 1u;
  }

  bool adjacent(VarId a, VarId b) const {
    check_node(a);
    check_node(b);
    return ((children_[a] | parents_[a] | undirected_[a]) >> b) & 1u;
  }

  /// Directs an existing edge tail->head. No-op when already directed that
  /// way; ConflictingOrientation when directed the other way; MissingEdge
  /// when the nodes are not adjacent.
  void orient(VarId tail, VarId head);

  std::uint64_t children_mask(VarId v) const {
    check_node(v);
    return children_[v];
  }
  std::uint64_t parents_mask(VarId v) const {
    check_node(v);
    return parents_[v];
  }
  std::uint64_t undirected_mask(VarId v) const {
    check_node(v);
    return undirected_[v];
  }
  std::uint64_t adjacency_mask(VarId v) const {
    check_node(v);
    return children_[v] | parents_[v] | undirected_[v];
  }

  std::vector<Edge> directed_edges() const;
  /// Undirected edges as (min,max) pairs, sorted.
  std::vector<Edge> undirected_edges() const;

  bool fully_directed() const;
  bool has_directed_cycle() const;

  /// First undirected edge in (min,max) lexicographic order, if any.
  std::optional<Edge> first_undirected_edge() const;

  /// Requires fully_directed and no directed cycle.
  Dag to_dag() const;

  friend bool operator==(const Pdag& a, const Pdag& b) = default;

 private:
  void check_node(VarId v) const;

  int n_;
  std::vector<std::uint64_t> children_;
  std::vector<std::uint64_t> parents_;
  std::vector<std::uint64_t> undirected_;
};

/// The adjacency set forgetting orientation.
std::set<Edge> skeleton(const Dag& g);
std::set<Edge> skeleton(const Pdag& g);

/// All triples a -> b <- c with a, c nonadjacent.
std::set<Vee> vee_structures(const Dag& g);
std::set<Vee> vee_structures(const Pdag& g);

/// Reachability over directed edges only; undirected edges do not conduct.
/// Every node reaches itself.
bool has_directed_path(const Dag& g, VarId from, VarId to);
bool has_directed_path(const Pdag& g, VarId from, VarId to);

/// Nodes with a directed path into `targets`, including `targets` itself.
VarSet ancestors_or_self(const Dag& g, VarSet targets);

/// Same skeleton and same vee structures; the graph criterion for two dags
/// to impose identical independence restrictions.
bool is_equivalent(const Dag& d1, const Dag& d2);

/// Deterministic topological order: smallest index first among ready nodes.
std::vector<VarId> topological_order(const Dag& d);

/// Value-semantics orientation.
Pdag orient(Pdag g, VarId tail, VarId head);

}  // namespace dagiso
