#pragma once

#include <cstdint>
#include <vector>

#include "tpack/embed_common.hpp"
#include "tpack/embed_sparse.hpp"
#include "tpack/graph.hpp"
#include "tpack/profile.hpp"

namespace tpack {

/// Neighbours of `hub` with degree <= q whose other neighbours all have
/// degree <= q. Ascending.
std::vector<Vertex> select_p_prime(const Graph& forest, Vertex hub, double q);

/// Random sets on the residual guest forest H'. `order` lists the vertices of
/// H' (by non-increasing H'-degree); candidate sets are maximum independent
/// sets of the non-neighbours of w'_i with H'-degree below the cap. Checks
/// |C'_i| <= 4 sqrt n for all ranks and |D'_i| >= sqrt n/(20e) for ranks up to
/// `horizon`, resampling up to profile.retries times (strictness as in
/// sample_stage_sets).
StageSets sample_dense_stage_sets(const Graph& h_prime, const SortedVertexOrder& order, int n,
                                  const ConstantsProfile& profile, std::uint64_t seed,
                                  int horizon, bool strict = true);

/// Packs a tree with a high-degree vertex into the complement of g (which must
/// have an isolated vertex), honouring the pin. `preferred_isolated`, when
/// non-zero and isolated, hosts the tree's maximum-degree vertex;
/// `degree_budget` as in pack_low_max_degree. Throws StageFailure,
/// ResampleExhausted, InsufficientPPrime.
EmbedResult pack_high_max_degree(const Graph& g, const Tree& t, const PinConstraint& pin, int k,
                                 const ConstantsProfile& profile, std::uint64_t seed,
                                 Vertex preferred_isolated = 0, double degree_budget = 0);

}  // namespace tpack
