#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "tpack/errors.hpp"
#include "tpack/rng.hpp"
#include "tpack/star_path_pack.hpp"

using namespace tpack;

namespace {

SmallTree shaped(CompletionShape shape, int order, bool type_iii = false,
                 std::vector<Edge> extra = {}, std::vector<Vertex> avoid = {}) {
  SmallTree st = make_small_tree(shape, shape == CompletionShape::Star ? star_tree(order)
                                                                       : path_tree(order),
                                 type_iii, std::move(extra));
  st.avoid_centers = std::move(avoid);
  return st;
}

// Every injection of every tree, filtered by check_small_packing.
bool brute_force_exists(const std::vector<SmallTree>& trees) {
  const int k = static_cast<int>(trees.size());
  std::vector<std::vector<std::vector<Vertex>>> options(k);
  for (int j = 0; j < k; ++j) {
    std::vector<Vertex> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<Vertex>> seen;
    do {
      std::vector<Vertex> prefix(perm.begin(), perm.begin() + trees[j].order());
      if (std::find(seen.begin(), seen.end(), prefix) == seen.end()) seen.push_back(prefix);
    } while (std::next_permutation(perm.begin(), perm.end()));
    options[j] = std::move(seen);
  }
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    SmallPacking sp;
    for (int j = 0; j < k; ++j) {
      sp.h.emplace_back(options[j][pick[j]]);
      if (trees[j].shape == CompletionShape::Star) sp.star_centers[j] = sp.h.back()(1);
    }
    if (!check_small_packing(trees, sp)) return true;
    int j = k - 1;
    while (j >= 0 && ++pick[j] == options[j].size()) pick[j--] = 0;
    if (j < 0) return false;
  }
}

std::vector<SmallTree> random_config(int k, Rng& rng) {
  std::vector<SmallTree> trees;
  for (int j = 0; j < k; ++j) {
    const int order = k - j;
    const bool star = rng.bernoulli(0.5);
    const bool iii = star && rng.bernoulli(0.4);
    std::vector<Edge> extra;
    if (!iii && order >= 2 && rng.bernoulli(0.5)) extra.emplace_back(1, 2);
    std::vector<Vertex> avoid;
    for (Vertex v = star ? 2 : 1; v <= order; ++v)
      if (rng.bernoulli(0.2)) avoid.push_back(v);
    trees.push_back(shaped(star ? CompletionShape::Star : CompletionShape::Path, order, iii,
                           extra, avoid));
  }
  return trees;
}

}  // namespace

TEST_CASE("canonical path and star labelling") {
  CHECK(path_tree(4).graph().adjacent(2, 3));
  CHECK(star_tree(4).graph().degree(1) == 3);
  CHECK(path_tree(2) == star_tree(2));
}

TEST_CASE("single vertex and tiny blocks") {
  std::vector<SmallTree> one{shaped(CompletionShape::Path, 1)};
  const auto sp = pack_small(one);
  CHECK(sp.h[0](1) == 1);

  std::vector<SmallTree> three{shaped(CompletionShape::Star, 3, true), shaped(CompletionShape::Path, 2),
                               shaped(CompletionShape::Star, 1, true)};
  const auto sp3 = pack_small(three);
  CHECK_FALSE(check_small_packing(three, sp3));
  CHECK(sp3.type_iii_centers(three).size() == 2);
}

TEST_CASE("all path/star mixes pack for k <= 7") {
  for (int k = 1; k <= 7; ++k) {
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<SmallTree> trees;
      for (int j = 0; j < k; ++j)
        trees.push_back(shaped((mask >> j) & 1 ? CompletionShape::Star : CompletionShape::Path, k - j));
      const auto sp = pack_small(trees);
      CHECK_FALSE(check_small_packing(trees, sp));
    }
  }
}

TEST_CASE("stars never reuse an earlier star's center") {
  std::vector<SmallTree> trees;
  for (int j = 0; j < 6; ++j) trees.push_back(shaped(CompletionShape::Star, 6 - j, true));
  const auto sp = pack_small(trees);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < i; ++j)
      for (Vertex v = 1; v <= trees[i].order(); ++v) CHECK(sp.h[i](v) != sp.star_centers.at(j));
  const auto tags = classify_edges(trees, sp);
  REQUIRE(tags.size() == 6);
}

TEST_CASE("pack_small agrees with brute force on random constrained blocks") {
  Rng rng(11);
  int infeasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int k = rng.uniform(1, 4);
    const auto trees = random_config(k, rng);
    const bool exists = brute_force_exists(trees);
    bool found = false;
    try {
      const auto sp = pack_small(trees);
      CHECK_FALSE(check_small_packing(trees, sp));
      found = true;
    } catch (const SmallPackingInfeasible&) {
      ++infeasible;
    }
    CHECK(found == exists);
  }
  MESSAGE("infeasible configurations: " << infeasible);
}

TEST_CASE("infeasible avoid sets are reported") {
  // Tree 1 must avoid both type-III centers but needs 3 of 4 vertices.
  std::vector<SmallTree> trees{shaped(CompletionShape::Star, 4, true),
                               shaped(CompletionShape::Path, 3, false, {}, {1, 2, 3}),
                               shaped(CompletionShape::Star, 2, true), shaped(CompletionShape::Path, 1)};
  CHECK_THROWS_AS(pack_small(trees), SmallPackingInfeasible);
  try {
    pack_small(trees);
  } catch (const SmallPackingInfeasible& e) {
    CHECK(std::string(e.what()).find("type-III center conditions") != std::string::npos);
  }
}

TEST_CASE("malformed inputs") {
  std::vector<SmallTree> wrong_order{shaped(CompletionShape::Path, 2)};
  CHECK_THROWS_AS(pack_small(wrong_order), std::invalid_argument);
  std::vector<SmallTree> iii_path{shaped(CompletionShape::Path, 3, true), shaped(CompletionShape::Path, 2),
                                  shaped(CompletionShape::Path, 1)};
  CHECK_THROWS_AS(pack_small(iii_path), std::invalid_argument);
  SmallTree relabelled = shaped(CompletionShape::Path, 3);
  relabelled.completion = Tree(Graph(3, std::vector<Edge>{{1, 3}, {2, 3}}));
  std::vector<SmallTree> bad{relabelled, shaped(CompletionShape::Path, 2), shaped(CompletionShape::Path, 1)};
  CHECK_THROWS_AS(pack_small(bad), std::invalid_argument);
}

TEST_CASE("check_small_packing catches tampering") {
  std::vector<SmallTree> trees{shaped(CompletionShape::Star, 3), shaped(CompletionShape::Path, 2),
                               shaped(CompletionShape::Path, 1)};
  auto sp = pack_small(trees);
  CHECK_FALSE(check_small_packing(trees, sp));
  auto bad = sp;
  bad.h[1] = Embedding({sp.h[0](1), sp.h[0](2)});
  CHECK(check_small_packing(trees, bad));
}

TEST_CASE("small_tree_from marks vertices whose degree exceeds their completion degree") {
  // Path 1-2-3-4 plus leaf 5 on vertex 2; k = 2, j = 1: nothing required, one leaf reserved.
  const Tree t(Graph(5, std::vector<Edge>{{1, 2}, {2, 3}, {3, 4}, {2, 5}}));
  TreeClass cls;
  cls.type = TreeType::I;
  const auto rs = build_reserved(t, 1, 2, cls);
  const auto st = small_tree_from(rs, t, TreeType::I);
  CHECK(st.order() == 1);
  CHECK(st.avoid_centers == std::vector<Vertex>{1});
}
