#pragma once

#include <random>
#include <vector>

#include <dagiso/dsep.hpp>
#include <dagiso/graph.hpp>
#include <dagiso/model.hpp>

namespace dagiso::testing {

inline Dag make_dag(int n, const std::vector<Edge>& edges) { return Dag::from_edges(n, edges); }

inline VarSet set_of(std::initializer_list<VarId> vars) { return VarSet::of(vars); }

/// Every dag extension of the pdag by definition: all orientations of the
/// undirected edges that stay acyclic and keep the vee set unchanged.
/// Independent of the phase 2 machinery.
inline std::vector<Dag> all_extensions(const Pdag& g) {
  const std::vector<Edge> undirected = g.undirected_edges();
  const std::set<Vee> reference = vee_structures(g);
  std::vector<Dag> extensions;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << undirected.size()); ++bits) {
    Dag candidate(g.node_count());
    for (const Edge& e : g.directed_edges()) candidate.add_edge(e.first, e.second);
    for (size_t i = 0; i < undirected.size(); ++i) {
      if ((bits >> i) & 1u)
        candidate.add_edge(undirected[i].first, undirected[i].second);
      else
        candidate.add_edge(undirected[i].second, undirected[i].first);
    }
    if (!candidate.is_acyclic()) continue;
    if (vee_structures(candidate) != reference) continue;
    extensions.push_back(std::move(candidate));
  }
  return extensions;
}

/// Random dag: each pair absent / low->high / high->low, resampled until
/// acyclic.
inline Dag random_dag(int n, std::mt19937& rng, double edge_probability = 0.45) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (true) {
    Dag d(n);
    for (VarId a = 0; a < n; ++a)
      for (VarId b = a + 1; b < n; ++b) {
        if (coin(rng) >= edge_probability) continue;
        if (coin(rng) < 0.5)
          d.add_edge(a, b);
        else
          d.add_edge(b, a);
      }
    if (d.is_acyclic()) return d;
  }
}

/// Random canonical statement over a universe of size n.
inline Statement random_statement(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> role(0, 3);
  while (true) {
    VarSet lhs, rhs, cond;
    for (VarId v = 0; v < n; ++v) {
      switch (role(rng)) {
        case 1: lhs = lhs.with(v); break;
        case 2: rhs = rhs.with(v); break;
        case 3: cond = cond.with(v); break;
        default: break;
      }
    }
    if (lhs.empty() || rhs.empty()) continue;
    if (VarSet::lex_less(rhs, lhs)) std::swap(lhs, rhs);
    return Statement{lhs, rhs, cond};
  }
}

/// Random valid d-separation query over n nodes (nonempty x and y).
inline DsepQuery random_query(int n, std::mt19937& rng) {
  Statement s = random_statement(n, rng);
  return DsepQuery{s.lhs, s.rhs, s.cond};
}

}  // namespace dagiso::testing
