#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpack/embed_common.hpp"
#include "tpack/graph.hpp"
#include "tpack/profile.hpp"
#include "tpack/rng.hpp"

namespace tpack {

/// Per-rank random sets. Index i - 1 holds the sets of rank i:
///   a: candidates, b: p-sample of a,
///   c: (b_1 u ... u b_{i-1}) n N(v_i),
///   d: b_i \ (N[b_1] u ... u N[b_{i-1}]).
struct StageSets {
  std::vector<std::vector<Vertex>> a, b, c, d;
  double p = 0;
  int resamples = 0;
  /// Non-strict sampling only: the condition the returned draw still violates.
  std::string shortfall;
};

/// Non-neighbours of v_i (excluding v_i) with degree below a_cap, per rank.
std::vector<std::vector<Vertex>> candidate_sets(const Graph& g, const SortedVertexOrder& order,
                                                double a_cap);

/// One draw of b, c, d for the given candidate sets.
StageSets draw_stage_sets(const Graph& g, const SortedVertexOrder& order,
                          std::vector<std::vector<Vertex>> a, double p, Rng& rng);

/// Draws until |C_i| <= c_bound for every rank and |D_i| >= d_bound for every
/// rank up to `horizon`; after profile.retries draws throws ResampleExhausted,
/// or with strict = false returns the last draw with `shortfall` set.
StageSets sample_stage_sets(const Graph& g, const SortedVertexOrder& order, int k,
                            const ConstantsProfile& profile, std::uint64_t seed, int horizon,
                            bool strict = true);

struct EmbedResult {
  /// Guest vertex -> host vertex.
  Embedding f;
  StageTrace trace;
  int union_max_degree = 0;
  /// Pin degree caps that did not hold (recorded, enforced only when faithful).
  std::vector<std::string> pin_issues;
};

/// Packs a tree of small maximum degree into the complement of g, honouring
/// the pin. `degree_budget` caps the union's maximum degree (0: the profile's
/// budget for g's order). Throws StageFailure, ResampleExhausted.
EmbedResult pack_low_max_degree(const Graph& g, const Tree& t, const PinConstraint& pin, int k,
                                const ConstantsProfile& profile, std::uint64_t seed,
                                double degree_budget = 0);

}  // namespace tpack
