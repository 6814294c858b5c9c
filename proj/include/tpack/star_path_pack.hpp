#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpack/graph.hpp"
#include "tpack/tree_tools.hpp"

namespace tpack {

/// One completion to be packed into the reserved block, on local labels.
struct SmallTree {
  Tree completion;
  CompletionShape shape = CompletionShape::Path;
  /// Its large tree is of type III (then the completion is a star).
  bool type_iii = false;
  /// Edges of the completion that the large tree does not have.
  std::vector<Edge> extra_edges;
  /// Local vertices whose image must not be a type-III center.
  std::vector<Vertex> avoid_centers;

  int order() const { return completion.order(); }
};

SmallTree make_small_tree(CompletionShape shape, const Tree& completion, bool type_iii = false,
                          std::vector<Edge> extra_edges = {});

/// Derives the completion from reserved sets. Vertices other than the center
/// whose degree in `t` exceeds their completion degree go to avoid_centers.
SmallTree small_tree_from(const ReservedSets& rs, const Tree& t, TreeType type);

/// Path or star of the given order on local labels (star center at 1).
Tree path_tree(int order);
Tree star_tree(int order);

struct SmallPacking {
  /// h[j] maps the completion of tree j into 1..k.
  std::vector<Embedding> h;
  /// Center image of every star-shaped completion.
  std::map<int, Vertex> star_centers;
  std::int64_t nodes = 0;

  /// Center images of the type-III completions, ascending.
  std::vector<Vertex> type_iii_centers(std::span<const SmallTree> trees) const;
};

/// Packs the k completions (orders k, k-1, ..., 1) into K_k such that
///   - images are pairwise edge-disjoint;
///   - a star never uses the center image of a star with smaller index;
///   - no extra edge has both endpoints on type-III centers;
///   - avoid_centers vertices never land on a type-III center.
/// Exhaustive backtracking; throws SmallPackingInfeasible naming the condition
/// that cannot be met, or when `node_budget` search nodes are exceeded.
SmallPacking pack_small(std::span<const SmallTree> trees, std::int64_t node_budget = 20'000'000);

enum class EdgeTag { Redundant, Essential };

/// Per tree, tags aligned with completion.graph().edges(). An edge is
/// essential iff both endpoints land on type-III centers.
std::vector<std::vector<EdgeTag>> classify_edges(std::span<const SmallTree> trees,
                                                 const SmallPacking& sp);

/// Independent re-check of every condition pack_small promises, including
/// that essential edges are never extra edges. Empty when all hold.
std::optional<std::string> check_small_packing(std::span<const SmallTree> trees,
                                               const SmallPacking& sp);

}  // namespace tpack
