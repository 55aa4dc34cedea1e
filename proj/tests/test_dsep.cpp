#include <doctest.h>

#include <dagiso/dsep.hpp>
#include <dagiso/oracle.hpp>

#include "helpers.hpp"

using namespace dagiso;
using testing::make_dag;
using testing::random_dag;
using testing::random_query;
using testing::set_of;

namespace {

bool both_engines(const Dag& d, VarSet x, VarSet y, VarSet z) {
  DsepQuery q{x, y, z};
  bool fast = d_separated(d, q);
  bool naive = d_separated_naive(d, q);
  REQUIRE(fast == naive);
  return fast;
}

}  // namespace

TEST_CASE("collider blocks marginally and activates when conditioned") {
  Dag collider = make_dag(3, {{0, 1}, {2, 1}});
  CHECK(both_engines(collider, set_of({0}), set_of({2}), {}));
  CHECK_FALSE(both_engines(collider, set_of({0}), set_of({2}), set_of({1})));
}

TEST_CASE("chain blocks when the middle node is conditioned") {
  Dag chain = make_dag(3, {{0, 1}, {1, 2}});
  CHECK(both_engines(chain, set_of({0}), set_of({2}), set_of({1})));
  CHECK_FALSE(both_engines(chain, set_of({0}), set_of({2}), {}));
}

TEST_CASE("a collider's descendant activates the path") {
  Dag d = make_dag(4, {{0, 1}, {2, 1}, {1, 3}});
  CHECK_FALSE(both_engines(d, set_of({0}), set_of({2}), set_of({3})));
}

TEST_CASE("disconnected nodes are separated by anything") {
  Dag d(4);
  CHECK(both_engines(d, set_of({0}), set_of({1}), {}));
  CHECK(both_engines(d, set_of({0}), set_of({1}), set_of({2, 3})));
}

TEST_CASE("a single link cannot be deactivated") {
  Dag d = make_dag(4, {{0, 1}});
  for (std::uint64_t z = 0; z < 4; ++z) {
    VarSet cond = VarSet::from_bits(z << 2);  // subsets of {c,d}
    CHECK_FALSE(both_engines(d, set_of({0}), set_of({1}), cond));
  }
}

TEST_CASE("queries are validated") {
  Dag d = make_dag(2, {{0, 1}});
  CHECK_THROWS_AS(d_separated(d, DsepQuery{set_of({0}), set_of({0}), {}}), InvalidQuery);
  CHECK_THROWS_AS(d_separated(d, DsepQuery{set_of({0}), {}, {}}), InvalidQuery);
  CHECK_THROWS_AS(d_separated(d, DsepQuery{set_of({0}), set_of({3}), {}}), InvalidQuery);
  CHECK_THROWS_AS(d_separated_naive(d, DsepQuery{set_of({0}), {}, {}}), InvalidQuery);
}

TEST_CASE("d-separation is symmetric in the separated sets") {
  std::mt19937 rng(31);
  for (int round = 0; round < 100; ++round) {
    Dag d = random_dag(5, rng);
    DsepQuery q = random_query(5, rng);
    CHECK(d_separated(d, q) == d_separated(d, DsepQuery{q.y, q.x, q.z}));
  }
}

TEST_CASE("engine equals the path oracle on all small set queries") {
  for (int n = 2; n <= 3; ++n) {
    for (const Dag& d : enumerate_dags(n).dags) {
      // Every assignment of nodes to {out, x, y, z}.
      std::vector<int> role(n, 0);
      while (true) {
        VarSet x, y, z;
        for (int v = 0; v < n; ++v) {
          if (role[v] == 1) x = x.with(v);
          if (role[v] == 2) y = y.with(v);
          if (role[v] == 3) z = z.with(v);
        }
        if (!x.empty() && !y.empty()) both_engines(d, x, y, z);
        int i = 0;
        while (i < n && role[i] == 3) role[i++] = 0;
        if (i == n) break;
        ++role[i];
      }
    }
  }
}

TEST_CASE("engine equals the path oracle on singleton queries over 4 nodes") {
  for (const Dag& d : enumerate_dags(4).dags) {
    for (VarId a = 0; a < 4; ++a)
      for (VarId b = a + 1; b < 4; ++b) {
        std::uint64_t rest = ((std::uint64_t{1} << 4) - 1) &
                             ~((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
        for (std::uint64_t z = rest;; z = (z - 1) & rest) {
          both_engines(d, VarSet::single(a), VarSet::single(b), VarSet::from_bits(z));
          if (z == 0) break;
        }
      }
  }
}

TEST_CASE("engine equals the path oracle on random 5-7 node dags") {
  std::mt19937 rng(37);
  for (int round = 0; round < 300; ++round) {
    int n = 5 + round % 3;
    Dag d = random_dag(n, rng);
    for (int q = 0; q < 8; ++q) {
      DsepQuery query = random_query(n, rng);
      CHECK(d_separated(d, query) == d_separated_naive(d, query));
    }
  }
}

TEST_CASE("full model of the empty two-node dag") {
  std::set<Statement> expected = {{set_of({0}), set_of({1}), {}}};
  CHECK(full_model(Dag(2), default_universe(2)).statements() == expected);
}

TEST_CASE("full model of chain and collider via the enumeration oracle") {
  Universe u = default_universe(3);
  auto oracle_model = [&u](const Dag& d) {
    // Independent route: enumerate every canonical disjoint triple and ask
    // the path oracle.
    std::set<Statement> out;
    std::vector<int> role(3, 0);
    while (true) {
      VarSet lhs, rhs, cond;
      for (int v = 0; v < 3; ++v) {
        if (role[v] == 1) lhs = lhs.with(v);
        if (role[v] == 2) rhs = rhs.with(v);
        if (role[v] == 3) cond = cond.with(v);
      }
      if (!lhs.empty() && !rhs.empty() && !VarSet::lex_less(rhs, lhs) &&
          d_separated_naive(d, DsepQuery{lhs, rhs, cond}))
        out.insert(Statement{lhs, rhs, cond});
      int i = 0;
      while (i < 3 && role[i] == 3) role[i++] = 0;
      if (i == 3) break;
      ++role[i];
    }
    return out;
  };

  Dag chain = make_dag(3, {{0, 1}, {1, 2}});
  std::set<Statement> chain_expected = {{set_of({0}), set_of({2}), set_of({1})}};
  CHECK(full_model(chain, u).statements() == chain_expected);
  CHECK(oracle_model(chain) == chain_expected);

  Dag collider = make_dag(3, {{0, 1}, {2, 1}});
  std::set<Statement> collider_expected = {{set_of({0}), set_of({2}), {}}};
  CHECK(full_model(collider, u).statements() == collider_expected);
  CHECK(oracle_model(collider) == collider_expected);
}

TEST_CASE("full model refuses oversized dags") {
  CHECK_THROWS_AS(full_model(Dag(7), default_universe(7)), UniverseTooLarge);
  CHECK_THROWS_AS(full_model(Dag(3), default_universe(4)), NodeSetMismatch);
}

TEST_CASE("set statements hold exactly when all singleton projections hold") {
  // I(A,B|C) holds iff I(a,b|C) holds for every a in A, b in B; checked on
  // every disjoint triple over every dag with up to 4 nodes.
  for (int n = 3; n <= 4; ++n) {
    Universe u = default_universe(n);
    for (const Dag& d : enumerate_dags(n).dags) {
      DependencyModel model = full_model(d, u);
      std::vector<int> role(n, 0);
      while (true) {
        VarSet lhs, rhs, cond;
        for (int v = 0; v < n; ++v) {
          if (role[v] == 1) lhs = lhs.with(v);
          if (role[v] == 2) rhs = rhs.with(v);
          if (role[v] == 3) cond = cond.with(v);
        }
        if (!lhs.empty() && !rhs.empty()) {
          bool all_singletons = true;
          for (VarId a : lhs.to_vector())
            for (VarId b : rhs.to_vector())
              all_singletons =
                  all_singletons &&
                  d_separated(d, DsepQuery{VarSet::single(a), VarSet::single(b), cond});
          CHECK(model.contains(Statement{lhs, rhs, cond}) == all_singletons);
        }
        int i = 0;
        while (i < n && role[i] == 3) role[i++] = 0;
        if (i == n) break;
        ++role[i];
      }
    }
  }
}
