#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <dagiso/dsep.hpp>
#include <dagiso/graph.hpp>
#include <dagiso/model.hpp>

namespace dagiso {

/// Every labeled dag on n nodes, exactly once, in a deterministic order.
struct DagSpace {
  int n = 0;
  std::vector<Dag> dags;

  std::int64_t count() const { return static_cast<std::int64_t>(dags.size()); }
};

/// Enumerates all labeled dags on n <= 5 nodes by assigning each node pair
/// one of {absent, ->, <-} and filtering the acyclic results.
DagSpace enumerate_dags(int n);

/// Ground-truth decision by exhaustive search: the first enumerated dag
/// whose full d-separation model equals m, or absent. n <= 4.
std::optional<Dag> is_dag_isomorphic_bruteforce(const DependencyModel& m, int n);

/// Dags grouped by (skeleton, vee set); classes ordered by smallest member
/// index, members ascending. Two dags share a class iff they impose the
/// same independence restrictions.
std::vector<std::vector<int>> equivalence_classes(const DagSpace& space);
std::vector<std::vector<int>> equivalence_classes(int n);

/// Labeled-dag count by the inclusion-exclusion recurrence over the set of
/// source nodes; independent of the enumerator and used to cross-check its
/// totals.
std::int64_t labeled_dag_count(int n);

}  // namespace dagiso
