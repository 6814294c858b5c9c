#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "tpack/rng.hpp"
#include "tpack/sparse_pair.hpp"

using namespace tpack;

namespace {

Graph from_mask(int n, std::uint32_t mask) {
  std::vector<Edge> e;
  int bit = 0;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v, ++bit)
      if ((mask >> bit) & 1) e.emplace_back(u, v);
  return Graph(n, e);
}

bool oracle_packs(const Graph& g1, const Graph& g2) {
  std::vector<Vertex> perm(g1.order());
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool ok = true;
    for (const Edge& e : g1.edges())
      if (g2.adjacent(perm[e.u - 1], perm[e.v - 1])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void expect_packs(const Graph& g1, const Graph& g2, const Embedding& s) {
  REQUIRE(s.guest_order() == g1.order());
  const std::vector<Graph> gs{g1, g2};
  std::vector<Vertex> id(g2.order());
  std::iota(id.begin(), id.end(), 1);
  const std::vector<Embedding> fs{s, Embedding(id)};
  CHECK(verify_packing(gs, fs, g1.order()).valid());
}

Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

}  // namespace

TEST_CASE("brandt precondition arithmetic") {
  const Graph empty(10, std::vector<Edge>{});
  CHECK(brandt_precondition(empty, empty, 0.4));
  CHECK(brandt_precondition(empty, empty, 0.01));

  // n = 100: 40 <= 0.4 * 100 and 500 <= 1000 / (3 sqrt 0.4) ~ 527.
  Rng rng(3);
  auto with_edges = [&](int n, int m) {
    GraphBuilder b(n);
    while (static_cast<int>(b.size()) < m) {
      const Vertex u = rng.uniform(1, n), v = rng.uniform(1, n);
      if (u != v) b.add_edge(u, v);
    }
    return b.build();
  };
  CHECK(brandt_precondition(with_edges(100, 40), with_edges(100, 500), 0.4));
  CHECK_FALSE(brandt_precondition(with_edges(100, 41), with_edges(100, 500), 0.4));
  CHECK_FALSE(brandt_precondition(with_edges(100, 40), with_edges(100, 528), 0.4));
  CHECK(brandt_precondition(with_edges(100, 40), with_edges(100, 527), 0.4));

  CHECK_THROWS_AS(brandt_precondition(empty, Graph(9, std::vector<Edge>{}), 0.4), GraphError);
  CHECK_THROWS(brandt_precondition(empty, empty, 0.5));
  CHECK_THROWS(brandt_precondition(empty, empty, 0.0));
}

TEST_CASE("small documented pairs") {
  const Graph matching(4, std::vector<Edge>{{1, 2}, {3, 4}});
  CHECK(oracle_packs(matching, matching));
  const auto s = pack_sparse_pair(matching, matching, 1);
  REQUIRE(s);
  expect_packs(matching, matching, *s);

  const Graph tri(6, std::vector<Edge>{{1, 2}, {2, 3}, {1, 3}});
  const auto t = pack_sparse_pair(tri, tri, 2);
  REQUIRE(t);
  expect_packs(tri, tri, *t);

  for (bool exact : {true, false}) {
    PairPackOptions opts;
    if (!exact) opts.exact_max_n = 0;
    const auto p = pack_sparse_pair(path(50), path(50), 5, opts);
    REQUIRE(p);
    expect_packs(path(50), path(50), *p);
  }
}

TEST_CASE("orders must agree") {
  CHECK_THROWS_AS(pack_sparse_pair(path(4), path(5), 1), GraphError);
}

TEST_CASE("K_4 cannot host anything with an edge") {
  const Graph k4 = from_mask(4, 0x3f);
  CHECK_FALSE(pack_sparse_pair(path(4), k4, 1));
  CHECK(pack_sparse_pair(Graph(4, std::vector<Edge>{}), k4, 1));
}

TEST_CASE("exhaustive agreement with the permutation oracle for n <= 5") {
  int pairs = 0, packable = 0;
  for (int n = 2; n <= 5; ++n) {
    const int bits = n * (n - 1) / 2;
    for (std::uint32_t m1 = 0; m1 < (1u << bits); ++m1) {
      const Graph g1 = from_mask(n, m1);
      if (g1.size() > 0.4 * n) continue;
      for (std::uint32_t m2 = 0; m2 < (1u << bits); ++m2) {
        const Graph g2 = from_mask(n, m2);
        if (!brandt_precondition(g1, g2, 0.4)) continue;
        ++pairs;
        const bool exists = oracle_packs(g1, g2);
        const auto s = pack_sparse_pair(g1, g2, m1 * 1000003ull + m2);
        CHECK(s.has_value() == exists);
        if (s) {
          ++packable;
          expect_packs(g1, g2, *s);
        }
      }
    }
  }
  MESSAGE("pairs=" << pairs << " packable=" << packable);
  CHECK(pairs > 30000);
}

TEST_CASE("local search agrees with the oracle on random n = 6 pairs") {
  Rng rng(6);
  PairPackOptions opts;
  opts.exact_max_n = 0;
  opts.move_budget = 20000;
  int disagreements = 0, checked = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const Graph g1 = from_mask(6, static_cast<std::uint32_t>(rng.uniform(0, (1 << 15) - 1)) &
                                      static_cast<std::uint32_t>(rng.uniform(0, (1 << 15) - 1)) &
                                      static_cast<std::uint32_t>(rng.uniform(0, (1 << 15) - 1)));
    const Graph g2 = from_mask(6, static_cast<std::uint32_t>(rng.uniform(0, (1 << 15) - 1)));
    if (!brandt_precondition(g1, g2, 0.4)) continue;
    ++checked;
    const bool exists = oracle_packs(g1, g2);
    const auto s = pack_sparse_pair(g1, g2, trial, opts);
    if (s) {
      CHECK(exists);
      expect_packs(g1, g2, *s);
    }
    if (s.has_value() != exists) ++disagreements;
  }
  MESSAGE("checked=" << checked << " disagreements=" << disagreements);
  CHECK(checked > 100);
  CHECK(disagreements == 0);
}

TEST_CASE("random sparse pairs at desk scale") {
  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform(20, 120);
    GraphBuilder b1(n), b2(n);
    auto fill = [&](GraphBuilder& b, std::size_t m) {
      while (b.size() < m) {
        const Vertex u = rng.uniform(1, n), v = rng.uniform(1, n);
        if (u != v) b.add_edge(u, v);
      }
    };
    fill(b1, static_cast<std::size_t>(0.4 * n));
    fill(b2, static_cast<std::size_t>(2 * n));
    const Graph g1 = b1.build(), g2 = b2.build();
    REQUIRE(brandt_precondition(g1, g2, 0.4));
    const auto s = pack_sparse_pair(g1, g2, trial);
    REQUIRE(s);
    expect_packs(g1, g2, *s);
    CHECK(pack_sparse_pair(g1, g2, trial) == s);
  }
}
