#include <dagiso/oracle.hpp>

#include <algorithm>
#include <map>
#include <string>

#include <dagiso/errors.hpp>

namespace dagiso {

DagSpace enumerate_dags(int n) {
  if (n < 1 || n > 5)
    throw TooLarge("dag enumeration supports 1..5 nodes; got " + std::to_string(n));

  std::vector<Edge> pairs;
  for (VarId a = 0; a < n; ++a)
    for (VarId b = a + 1; b < n; ++b) pairs.push_back({a, b});

  DagSpace space;
  space.n = n;
  // Base-3 odometer over pair states: 0 absent, 1 low->high, 2 high->low.
  std::vector<int> state(pairs.size(), 0);
  while (true) {
    Dag d(n);
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (state[i] == 1) d.add_edge(pairs[i].first, pairs[i].second);
      if (state[i] == 2) d.add_edge(pairs[i].second, pairs[i].first);
    }
    if (d.is_acyclic()) space.dags.push_back(std::move(d));

    size_t i = 0;
    while (i < state.size() && state[i] == 2) state[i++] = 0;
    if (i == state.size()) break;
    ++state[i];
  }
  return space;
}

std::optional<Dag> is_dag_isomorphic_bruteforce(const DependencyModel& m, int n) {
  if (n < 1 || n > 4)
    throw TooLarge("brute-force isomorphism search supports 1..4 nodes; got " +
                   std::to_string(n));
  if (m.universe().size() != n)
    throw NodeSetMismatch("universe size does not match the requested node count");

  for (const Dag& d : enumerate_dags(n).dags) {
    if (full_model(d, m.universe()).statements() == m.statements()) return d;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> equivalence_classes(const DagSpace& space) {
  using ClassKey = std::pair<std::set<Edge>, std::set<Vee>>;
  std::map<ClassKey, std::vector<int>> grouped;
  for (int i = 0; i < static_cast<int>(space.dags.size()); ++i) {
    const Dag& d = space.dags[i];
    grouped[{skeleton(d), vee_structures(d)}].push_back(i);
  }
  std::vector<std::vector<int>> classes;
  classes.reserve(grouped.size());
  for (auto& [key, members] : grouped) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

std::vector<std::vector<int>> equivalence_classes(int n) {
  return equivalence_classes(enumerate_dags(n));
}

std::int64_t labeled_dag_count(int n) {
  if (n < 0 || n > 10) throw TooLarge("recurrence evaluated for 0..10 nodes only");
  // a(n) = sum_{k=1..n} (-1)^(k+1) C(n,k) 2^(k(n-k)) a(n-k); k counts the
  // nodes with no incoming edge.
  std::vector<std::int64_t> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::int64_t total = 0;
    std::int64_t binom = 1;  // C(m, k), updated incrementally
    for (int k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      std::int64_t term = binom * (std::int64_t{1} << (k * (m - k))) * a[m - k];
      total += (k % 2 == 1) ? term : -term;
    }
    a[m] = total;
  }
  return a[n];
}

}  // namespace dagiso
