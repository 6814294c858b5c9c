#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "tpack/oracle.hpp"
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

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long automorphisms(const Graph& g) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 1);
  long long count = 0;
  do {
    bool ok = true;
    for (const Edge& e : g.edges())
      if (!g.adjacent(perm[e.u - 1], perm[e.v - 1])) {
        ok = false;
        break;
      }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Guest 0 fixed on the identity, every other guest over all injections.
bool brute_packs(const std::vector<Graph>& guests, int n) {
  std::vector<std::vector<std::vector<Vertex>>> options(guests.size());
  for (std::size_t j = 1; j < guests.size(); ++j) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<Vertex> prefix(perm.begin(), perm.begin() + guests[j].order());
      if (options[j].empty() || options[j].back() != prefix) options[j].push_back(prefix);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::vector<std::vector<char>> used(n + 1, std::vector<char>(n + 1, 0));
  std::function<bool(std::size_t)> place = [&](std::size_t j) -> bool {
    if (j == guests.size()) return true;
    const auto try_map = [&](const std::vector<Vertex>& m) {
      std::vector<Edge> added;
      bool ok = true;
      for (const Edge& e : guests[j].edges()) {
        const Vertex a = m[e.u - 1], b = m[e.v - 1];
        if (used[a][b]) {
          ok = false;
          break;
        }
        used[a][b] = used[b][a] = 1;
        added.emplace_back(a, b);
      }
      if (ok && place(j + 1)) return true;
      for (const Edge& e : added) used[e.u][e.v] = used[e.v][e.u] = 0;
      return false;
    };
    if (j == 0) {
      std::vector<Vertex> id(guests[0].order());
      std::iota(id.begin(), id.end(), 1);
      return try_map(id);
    }
    for (const auto& m : options[j])
      if (try_map(m)) return true;
    return false;
  };
  return place(0);
}

Graph random_forest(int n, double keep, Rng& rng) {
  GraphBuilder b(n);
  for (int v = 2; v <= n; ++v)
    if (rng.bernoulli(keep)) b.add_edge(v, rng.uniform(1, v - 1));
  return b.build();
}

}  // namespace

TEST_CASE("unlabelled tree counts") {
  const std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int n = 1; n <= 10; ++n) CHECK(enumerate_trees(n).size() == expected[n - 1]);
  CHECK_THROWS_AS(enumerate_trees(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_trees(13), std::invalid_argument);
}

TEST_CASE("classes times labellings recover Cayley's count") {
  for (int n = 2; n <= 8; ++n) {
    long long labelled = 0;
    for (const Tree& t : enumerate_trees(n)) labelled += factorial(n) / automorphisms(t.graph());
    long long cayley = 1;
    for (int i = 0; i < n - 2; ++i) cayley *= n;
    CHECK(labelled == cayley);
  }
}

TEST_CASE("canonical form partitions all labelled trees into the enumerated classes") {
  for (int n = 2; n <= 7; ++n) {
    std::map<std::string, long long> groups;
    std::vector<Vertex> seq(n - 2, 1);
    while (true) {
      ++groups[canonical_form(decode_prufer(seq, n))];
      int i = n - 3;
      while (i >= 0 && seq[i] == n) seq[i--] = 1;
      if (i < 0) break;
      ++seq[i];
    }
    const auto classes = enumerate_trees(n);
    REQUIRE(groups.size() == classes.size());
    for (const Tree& t : classes) {
      const auto it = groups.find(canonical_form(t));
      REQUIRE(it != groups.end());
      CHECK(it->second == factorial(n) / automorphisms(t.graph()));
    }
  }
}

TEST_CASE("canonical form ignores labels") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Tree t = random_tree(Family::Uniform, rng.uniform(1, 30), 3, rng);
    std::vector<Vertex> perm(t.order());
    std::iota(perm.begin(), perm.end(), 1);
    rng.shuffle(std::span<Vertex>(perm));
    CHECK(canonical_form(relabel(t, perm)) == canonical_form(t));
  }
  CHECK(canonical_form(Tree(path(4))) != canonical_form(Tree(star(4))));
}

TEST_CASE("K_4 examples") {
  const Graph tri(3, std::vector<Edge>{{1, 2}, {2, 3}, {1, 3}});
  const std::vector<Graph> two_triangles{tri, tri};
  CHECK(exact_pack(two_triangles, 4).status == ExactResult::Status::NoPacking);

  const std::vector<Graph> decomposition{star(4), path(3), path(2)};
  const auto r = exact_pack(decomposition, 4);
  REQUIRE(r.status == ExactResult::Status::Found);
  CHECK(verify_packing(decomposition, r.maps, 4).valid());

  const std::vector<Graph> too_big{path(5)};
  CHECK(exact_pack(too_big, 4).status == ExactResult::Status::NoPacking);
  const std::vector<Graph> too_many{star(4), star(4), path(2)};
  CHECK(exact_pack(too_many, 4).status == ExactResult::Status::NoPacking);
}

TEST_CASE("exact_pack is complete against permutation search") {
  Rng rng(66);
  int found = 0, none = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = rng.uniform(3, trial % 2 ? 5 : 6);
    const int guests = trial % 2 ? 3 : 2;
    std::vector<Graph> gs;
    for (int j = 0; j < guests; ++j) {
      const int order = rng.uniform(2, n);
      gs.push_back(rng.bernoulli(0.5) ? random_tree(Family::Uniform, order, 3, rng).graph()
                                      : random_forest(order, 0.7, rng));
    }
    const bool exists = brute_packs(gs, n);
    const auto r = exact_pack(gs, n);
    REQUIRE(r.status != ExactResult::Status::Timeout);
    CHECK((r.status == ExactResult::Status::Found) == exists);
    if (r.status == ExactResult::Status::Found) {
      ++found;
      CHECK(verify_packing(gs, r.maps, n).valid());
    } else {
      ++none;
    }
  }
  MESSAGE("found=" << found << " none=" << none);
  CHECK(found > 0);
  CHECK(none > 0);
}

TEST_CASE("tiny budgets time out") {
  std::vector<Graph> gs;
  for (int order = 9; order >= 5; --order) gs.push_back(path(order));
  const auto r = exact_pack(gs, 9, ExactBudget{1, 60.0});
  CHECK(r.status == ExactResult::Status::Timeout);
}

TEST_CASE("suites") {
  const auto pairs = corollary_suite(5, 5, 2);
  CHECK(pairs.total == 6);
  CHECK(pairs.packed == 6);

  const auto triples = corollary_suite(7, 7, 3);
  CHECK(triples.total == 198);
  CHECK(triples.packed == 198);
  CHECK(triples.failed == 0);
  CHECK(triples.summary() == "total=198 packed=198 failed=0 timeout=0");

  const auto small = corollary_suite(1, 6, 3);
  CHECK(small.failed == 0);
  CHECK(small.timeout == 0);

  const auto a = sampled_suite(8, 4, 30, 12);
  const auto b = sampled_suite(8, 4, 30, 12);
  CHECK(a.total == 30);
  CHECK(a.failed == 0);
  CHECK(a.text() == b.text());
}
