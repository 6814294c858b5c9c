#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "tpack/graph.hpp"
#include "tpack/rng.hpp"
#include "tpack/tree_tools.hpp"

using namespace tpack;

namespace {

Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

Graph star(int n) {
  std::vector<Edge> e;
  for (int v = 2; v <= n; ++v) e.emplace_back(1, v);
  return Graph(n, e);
}

// Brute-force disjointness: a host edge set per guest, pairwise intersection.
bool disjoint_by_sets(std::span<const Graph> gs, std::span<const Embedding> fs) {
  std::vector<std::set<Edge>> images;
  for (std::size_t j = 0; j < gs.size(); ++j) {
    std::set<Edge> s;
    for (const Edge& e : gs[j].edges()) s.insert(Edge(fs[j](e.u), fs[j](e.v)));
    images.push_back(s);
  }
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b)
      for (const Edge& e : images[a])
        if (images[b].count(e)) return false;
  return true;
}

}  // namespace

TEST_CASE("edges are normalised and graphs reject bad input") {
  CHECK(Edge(5, 2) == Edge(2, 5));
  CHECK(Edge(5, 2).u == 2);
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{1, 1}}), GraphError);
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{1, 2}, {2, 1}}), GraphError);
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{1, 4}}), GraphError);
}

TEST_CASE("adjacency, degrees and connectivity") {
  const Graph p = path(5);
  CHECK(p.adjacent(2, 3));
  CHECK(p.adjacent(3, 2));
  CHECK_FALSE(p.adjacent(1, 3));
  CHECK(p.max_degree() == 2);
  CHECK(p.min_degree() == 1);
  CHECK(p.is_connected());
  CHECK_FALSE(Graph(3, std::vector<Edge>{{1, 2}}).is_connected());
  CHECK(is_tree(p));
  CHECK_FALSE(is_tree(Graph(3, std::vector<Edge>{{1, 2}})));
  CHECK_THROWS_AS(Tree(Graph(3, std::vector<Edge>{{1, 2}})), GraphError);
}

TEST_CASE("builder rejects duplicates") {
  GraphBuilder b(4);
  CHECK(b.add_edge(1, 2));
  CHECK_FALSE(b.add_edge(2, 1));
  CHECK(b.has_edge(1, 2));
  CHECK(b.build().size() == 1);
}

TEST_CASE("tree leaves and max-degree vertex") {
  const Tree t(Graph(5, std::vector<Edge>{{1, 2}, {2, 3}, {2, 4}, {4, 5}}));
  CHECK(t.leaves() == std::vector<Vertex>{1, 3, 5});
  CHECK(t.max_degree_vertex() == 2);
}

TEST_CASE("oplus and apply") {
  const Graph a(4, std::vector<Edge>{{1, 2}});
  const Graph b(3, std::vector<Edge>{{2, 3}});
  const Graph u = oplus(a, b);
  CHECK(u.order() == 4);
  CHECK(u.size() == 2);
  const Graph img = apply(Embedding({4, 1, 2}), b, 5);
  CHECK(img.adjacent(1, 2));
  CHECK(img.order() == 5);
  CHECK_THROWS_AS(apply(Embedding({1, 1, 2}), b, 5), GraphError);
}

TEST_CASE("verify_packing on known cases") {
  // K_{1,3}, P_3 and K_2 decompose K_4.
  std::vector<Graph> gs{star(4), path(3), path(2)};
  std::vector<Embedding> fs{Embedding({1, 2, 3, 4}), Embedding({2, 3, 4}), Embedding({2, 4})};
  CHECK(verify_packing(gs, fs, 4).valid());

  fs[2] = Embedding({1, 2});
  const auto vr = verify_packing(gs, fs, 4);
  CHECK(vr.status == VerifyResult::Status::Conflict);
  CHECK(vr.first == 0);
  CHECK(vr.second == 2);
  CHECK(vr.edge == Edge(1, 2));

  fs[2] = Embedding({2, 2});
  CHECK(verify_packing(gs, fs, 4).status == VerifyResult::Status::Malformed);
  fs[2] = Embedding({2, 5});
  CHECK(verify_packing(gs, fs, 4).status == VerifyResult::Status::Malformed);
  fs.pop_back();
  CHECK(verify_packing(gs, fs, 4).status == VerifyResult::Status::Malformed);
}

TEST_CASE("verify_packing agrees with a set-based check on random packings") {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform(3, 12);
    const int k = rng.uniform(1, 4);
    std::vector<Graph> gs;
    std::vector<Embedding> fs;
    for (int j = 0; j < k; ++j) {
      const int order = rng.uniform(2, n);
      gs.push_back(random_tree(Family::Uniform, order, 3, rng).graph());
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      rng.shuffle(std::span<Vertex>(perm));
      fs.emplace_back(std::vector<Vertex>(perm.begin(), perm.begin() + order));
    }
    CHECK(verify_packing(gs, fs, n).valid() == disjoint_by_sets(gs, fs));
  }
}

TEST_CASE("sorted vertices order by degree then label") {
  const Graph g(5, std::vector<Edge>{{1, 2}, {3, 4}, {3, 5}, {2, 3}});
  const auto o = sorted_vertices(g);
  CHECK(std::vector<Vertex>(o.vertices().begin(), o.vertices().end()) ==
        std::vector<Vertex>{3, 2, 1, 4, 5});
  CHECK(o.rank(3) == 1);
  CHECK(o.at(2) == 2);

  const SortedVertexOrder partial({7, 2});
  CHECK(partial.rank(7) == 1);
  CHECK(partial.rank(2) == 2);
}

TEST_CASE("degree-rank bound holds for every rank on random graphs") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform(1, 30);
    GraphBuilder b(n);
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (rng.bernoulli(0.3)) b.add_edge(u, v);
    const Graph g = b.build();
    const auto o = sorted_vertices(g);
    for (int i = 1; i <= n; ++i) CHECK(g.degree(o.at(i)) * i <= 2 * static_cast<int>(g.size()));
  }
}

TEST_CASE("binomial tail bounds") {
  CHECK(binomial_tail_bound(100, 0.1, 10, TailSide::Upper) == doctest::Approx(std::exp(-10.0 / 3)));
  CHECK(binomial_tail_bound(100, 0.1, 8, TailSide::Lower) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(binomial_tail_bound(100, 0.1, 5, TailSide::Upper), std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail_bound(100, 0.1, 20, TailSide::Lower), std::invalid_argument);
}

TEST_CASE("induced subgraph relabels in ascending parent order") {
  const Graph g(5, std::vector<Edge>{{1, 5}, {2, 5}, {3, 4}});
  const std::vector<Vertex> keep{5, 2, 3};
  const auto sub = induced_subgraph(g, keep);
  CHECK(sub.to_parent == std::vector<Vertex>{2, 3, 5});
  CHECK(sub.graph.order() == 3);
  CHECK(sub.graph.size() == 1);
  CHECK(sub.graph.adjacent(1, 3));
}

TEST_CASE("edge-list round trip and malformed input") {
  const Graph g(4, std::vector<Edge>{{1, 2}, {2, 4}});
  std::stringstream s;
  write_edge_list(s, g);
  CHECK(read_edge_list(s) == g);
  std::stringstream bad("3 2\n1 2\n");
  CHECK_THROWS_AS(read_edge_list(bad), GraphError);
  std::stringstream loop("3 1\n2 2\n");
  CHECK_THROWS_AS(read_edge_list(loop), GraphError);
}
