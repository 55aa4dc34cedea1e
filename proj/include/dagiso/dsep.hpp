#pragma once

#include <dagiso/graph.hpp>
#include <dagiso/model.hpp>
#include <dagiso/varset.hpp>

namespace dagiso {

/// Is X d-separated from Y given Z?  x, y, z pairwise disjoint; x, y nonempty.
struct DsepQuery {
  VarSet x;
  VarSet y;
  VarSet z;
};

/// Full-model extraction refuses node counts beyond this by default; the
/// statement space grows as 4^n.
inline constexpr int kDefaultFullModelCap = 6;

/// Throws InvalidQuery on overlap, empty side, or out-of-range variables.
void validate_query(const Dag& d, const DsepQuery& q);

/// d-separation by reachability: a node of Y is reached from X along some
/// active path iff the sets are not separated. Agrees with
/// d_separated_naive by construction of the test suites, which is the
/// correctness anchor.
bool d_separated(const Dag& d, const DsepQuery& q);

/// Literal transcription of the definition: enumerate every simple path
/// between X and Y and test whether Z activates it. Exponential; meant for
/// small graphs and as the ground-truth oracle.
bool d_separated_naive(const Dag& d, const DsepQuery& q);

/// Every canonical statement I(A,B|C) over disjoint subsets of the universe
/// that holds in d by d-separation; origin Explicit.
DependencyModel full_model(const Dag& d, const Universe& universe,
                           int node_cap = kDefaultFullModelCap);

/// full_model over the default universe a, b, c, ...
DependencyModel full_model(const Dag& d, int node_cap = kDefaultFullModelCap);

}  // namespace dagiso
