#pragma once

#include <cstdint>
#include <optional>

#include "tpack/graph.hpp"

namespace tpack {

/// |E(G1)| <= alpha n and |E(G2)| <= n^{3/2} / (3 sqrt alpha). Requires
/// 0 < alpha < 1/2 and equal orders (GraphError otherwise).
bool brandt_precondition(const Graph& g1, const Graph& g2, double alpha);

struct PairPackOptions {
  /// Total local-search moves over all restarts.
  std::int64_t move_budget = 2'000'000;
  /// Exhaustive search is used when n is at most this.
  int exact_max_n = 9;
};

/// A bijection sigma: V(G1) -> V(G2) with sigma(G1) edge-disjoint from G2, or
/// nullopt when the budget runs out (never a proof of non-existence for
/// n > exact_max_n). Randomised start plus conflict-repair local search with
/// restarts; every returned map is verified.
std::optional<Embedding> pack_sparse_pair(const Graph& g1, const Graph& g2, std::uint64_t seed,
                                          const PairPackOptions& options = {});

}  // namespace tpack
