#include <dagiso/graph.hpp>

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include <dagiso/errors.hpp>

namespace dagiso {

namespace {

std::string edge_text(VarId a, VarId b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Kahn's algorithm over parent masks; returns nullopt on a cycle.
template <typename G>
std::optional<std::vector<VarId>> try_topological_order(const G& g) {
  int n = g.node_count();
  std::vector<VarId> order;
  order.reserve(n);
  std::uint64_t placed = 0;
  while (static_cast<int>(order.size()) < n) {
    std::uint64_t ready = 0;
    for (VarId v = 0; v < n; ++v) {
      if ((placed >> v) & 1u) continue;
      if ((g.parents_mask(v) & ~placed) == 0) ready |= std::uint64_t{1} << v;
    }
    if (ready == 0) return std::nullopt;
    VarId next = std::countr_zero(ready);
    order.push_back(next);
    placed |= std::uint64_t{1} << next;
  }
  return order;
}

template <typename G>
bool directed_path_impl(const G& g, VarId from, VarId to) {
  if (from == to) return true;
  std::uint64_t seen = std::uint64_t{1} << from;
  std::uint64_t frontier = seen;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t m = frontier; m != 0; m &= m - 1)
      next |= g.children_mask(std::countr_zero(m));
    if ((next >> to) & 1u) return true;
    frontier = next & ~seen;
    seen |= next;
  }
  return false;
}

template <typename G>
std::set<Edge> skeleton_impl(const G& g) {
  std::set<Edge> out;
  for (VarId a = 0; a < g.node_count(); ++a) {
    for (std::uint64_t m = g.adjacency_mask(a); m != 0; m &= m - 1) {
      VarId b = std::countr_zero(m);
      out.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return out;
}

template <typename G>
std::set<Vee> vee_impl(const G& g) {
  std::set<Vee> out;
  for (VarId center = 0; center < g.node_count(); ++center) {
    std::uint64_t parents = g.parents_mask(center);
    for (std::uint64_t ma = parents; ma != 0; ma &= ma - 1) {
      VarId a = std::countr_zero(ma);
      for (std::uint64_t mc = ma & (ma - 1); mc != 0; mc &= mc - 1) {
        VarId c = std::countr_zero(mc);
        if (!g.adjacent(a, c)) out.insert(make_vee(a, center, c));
      }
    }
  }
  return out;
}

}  // namespace

Dag::Dag(int n) : n_(n), children_(n, 0), parents_(n, 0) {
  if (n < 0 || n > VarSet::kMaxVars)
    throw Error("node count must be between 0 and " + std::to_string(VarSet::kMaxVars));
}

void Dag::check_node(VarId v) const {
  if (v < 0 || v >= n_) throw UnknownVariable("node index " + std::to_string(v) + " out of range");
}

void Dag::add_edge(VarId tail, VarId head) {
  check_node(tail);
  check_node(head);
  if (tail == head) throw Error("self-loop " + edge_text(tail, head));
  if (has_directed(tail, head) || has_directed(head, tail))
    throw Error("duplicate edge " + edge_text(tail, head));
  children_[tail] |= std::uint64_t{1} << head;
  parents_[head] |= std::uint64_t{1} << tail;
}

Dag Dag::from_edges(int n, const std::vector<Edge>& directed) {
  Dag d(n);
  for (const Edge& e : directed) d.add_edge(e.first, e.second);
  if (!d.is_acyclic()) throw CycleDetected("edge list contains a directed cycle");
  return d;
}

bool Dag::is_acyclic() const { return try_topological_order(*this).has_value(); }

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (VarId tail = 0; tail < n_; ++tail)
    for (std::uint64_t m = children_[tail]; m != 0; m &= m - 1)
      out.push_back({tail, std::countr_zero(m)});
  return out;
}

int Dag::edge_count() const {
  int total = 0;
  for (std::uint64_t m : children_) total += std::popcount(m);
  return total;
}

Pdag::Pdag(int n) : n_(n), children_(n, 0), parents_(n, 0), undirected_(n, 0) {
  if (n < 0 || n > VarSet::kMaxVars)
    throw Error("node count must be between 0 and " + std::to_string(VarSet::kMaxVars));
}

void Pdag::check_node(VarId v) const {
  if (v < 0 || v >= n_) throw UnknownVariable("node index " + std::to_string(v) + " out of range");
}

void Pdag::add_directed(VarId tail, VarId head) {
  check_node(tail);
  check_node(head);
  if (tail == head) throw Error("self-loop " + edge_text(tail, head));
  if (adjacent(tail, head)) throw Error("duplicate edge " + edge_text(tail, head));
  children_[tail] |= std::uint64_t{1} << head;
  parents_[head] |= std::uint64_t{1} << tail;
}

void Pdag::add_undirected(VarId a, VarId b) {
  check_node(a);
  check_node(b);
  if (a == b) throw Error("self-loop " + edge_text(a, b));
  if (adjacent(a, b)) throw Error("duplicate edge " + edge_text(a, b));
  undirected_[a] |= std::uint64_t{1} << b;
  undirected_[b] |= std::uint64_t{1} << a;
}

Pdag Pdag::from_edges(int n, const std::vector<Edge>& directed,
                      const std::vector<Edge>& undirected) {
  Pdag g(n);
  for (const Edge& e : directed) g.add_directed(e.first, e.second);
  for (const Edge& e : undirected) g.add_undirected(e.first, e.second);
  if (g.has_directed_cycle()) throw CycleDetected("directed subgraph contains a cycle");
  return g;
}

void Pdag::orient(VarId tail, VarId head) {
  check_node(tail);
  check_node(head);
  if (has_directed(tail, head)) return;
  if (has_directed(head, tail))
    throw ConflictingOrientation("edge " + edge_text(head, tail) +
                                 " is already directed the other way");
  if (!has_undirected(tail, head)) throw MissingEdge("no edge " + edge_text(tail, head));
  undirected_[tail] &= ~(std::uint64_t{1} << head);
  undirected_[head] &= ~(std::uint64_t{1} << tail);
  children_[tail] |= std::uint64_t{1} << head;
  parents_[head] |= std::uint64_t{1} << tail;
}

std::vector<Edge> Pdag::directed_edges() const {
  std::vector<Edge> out;
  for (VarId tail = 0; tail < n_; ++tail)
    for (std::uint64_t m = children_[tail]; m != 0; m &= m - 1)
      out.push_back({tail, std::countr_zero(m)});
  return out;
}

std::vector<Edge> Pdag::undirected_edges() const {
  std::vector<Edge> out;
  for (VarId a = 0; a < n_; ++a)
    for (std::uint64_t m = undirected_[a]; m != 0; m &= m - 1) {
      VarId b = std::countr_zero(m);
      if (a < b) out.push_back({a, b});
    }
  return out;
}

bool Pdag::fully_directed() const {
  for (std::uint64_t m : undirected_)
    if (m != 0) return false;
  return true;
}

bool Pdag::has_directed_cycle() const { return !try_topological_order(*this).has_value(); }

std::optional<Edge> Pdag::first_undirected_edge() const {
  for (VarId a = 0; a < n_; ++a) {
    std::uint64_t higher = undirected_[a] & ~((std::uint64_t{2} << a) - 1);
    if (a + 1 < VarSet::kMaxVars && higher != 0) return Edge{a, std::countr_zero(higher)};
  }
  return std::nullopt;
}

Dag Pdag::to_dag() const {
  if (!fully_directed()) throw Error("pdag still contains undirected edges");
  if (has_directed_cycle()) throw CycleDetected("directed subgraph contains a cycle");
  Dag d(n_);
  for (const Edge& e : directed_edges()) d.add_edge(e.first, e.second);
  return d;
}

std::set<Edge> skeleton(const Dag& g) { return skeleton_impl(g); }
std::set<Edge> skeleton(const Pdag& g) { return skeleton_impl(g); }

std::set<Vee> vee_structures(const Dag& g) { return vee_impl(g); }
std::set<Vee> vee_structures(const Pdag& g) { return vee_impl(g); }

bool has_directed_path(const Dag& g, VarId from, VarId to) {
  return directed_path_impl(g, from, to);
}
bool has_directed_path(const Pdag& g, VarId from, VarId to) {
  return directed_path_impl(g, from, to);
}

VarSet ancestors_or_self(const Dag& g, VarSet targets) {
  std::uint64_t seen = targets.bits();
  std::uint64_t frontier = seen;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t m = frontier; m != 0; m &= m - 1)
      next |= g.parents_mask(std::countr_zero(m));
    frontier = next & ~seen;
    seen |= next;
  }
  return VarSet::from_bits(seen);
}

bool is_equivalent(const Dag& d1, const Dag& d2) {
  if (d1.node_count() != d2.node_count())
    throw NodeSetMismatch("equivalence requires equal node sets");
  return skeleton(d1) == skeleton(d2) && vee_structures(d1) == vee_structures(d2);
}

std::vector<VarId> topological_order(const Dag& d) {
  auto order = try_topological_order(d);
  if (!order) throw CycleDetected("graph contains a directed cycle");
  return *order;
}

Pdag orient(Pdag g, VarId tail, VarId head) {
  g.orient(tail, head);
  return g;
}

}  // namespace dagiso
