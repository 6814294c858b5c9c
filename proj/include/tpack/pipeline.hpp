#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpack/embed_common.hpp"
#include "tpack/graph.hpp"
#include "tpack/profile.hpp"
#include "tpack/star_path_pack.hpp"
#include "tpack/tree_tools.hpp"

namespace tpack {

/// k trees; trees[j] has order n - j.
struct Instance {
  int n = 0;
  int k = 0;
  std::vector<Tree> trees;
};

/// Throws std::invalid_argument unless 1 <= k < n and orders are n, n-1, ...
void check_instance(const Instance& inst);

/// Draws each tree from `family` until it satisfies the leaves/pending-path
/// hypothesis and admits reserved sets under `profile`.
Instance generate_instance(int n, int k, Family family, int degree_bound, std::uint64_t seed,
                           const ConstantsProfile& profile = {});

/// Host labels of the reserved block and its parts.
struct PartitionXYZ {
  /// n-k+1 .. n.
  std::vector<Vertex> k_block;
  /// Centers of type-II completions.
  std::vector<Vertex> y;
  /// k_block \ y.
  std::vector<Vertex> x;
  /// Centers of type-III completions (a subset of x).
  std::vector<Vertex> z;
  /// Per tree, guest vertices whose small-packing image lies in x / y / z.
  std::vector<std::vector<Vertex>> x_of, y_of, z_of;
};

/// Lowest-label `size` vertices of (V \ Z) \ N_F(v). Throws StageFailure when
/// there are fewer candidates.
std::vector<Vertex> select_k_prime(const Graph& f, Vertex v, std::span<const Vertex> z, int size);

struct PipelineResult {
  bool success = false;
  /// maps[j] embeds trees[j] into 1..n.
  std::vector<Embedding> maps;
  /// 0 first seed, 1 seed retry, 2 relabelled restart, 3 exact search, 4 failed.
  int fallback_level = 4;
  /// Attempts made before the one that succeeded (or in total on failure).
  int retries = 0;
  /// key=value lines.
  std::vector<std::string> report;
  /// One decision per line.
  std::vector<std::string> trace;
  /// Final attempt solved without exact search.
  bool constructive() const { return success && fallback_level <= 2; }

  std::string report_text() const;
  std::string trace_text() const;
};

/// Packs the instance into K_n: reserved sets, small path/star packing,
/// type-II trees, then type-I, then type-III, each step checked. Stage errors
/// go down the fallback ladder; a hypothesis violation is thrown immediately.
PipelineResult pack_consecutive_trees(const Instance& inst, const ConstantsProfile& profile,
                                      std::uint64_t seed);

}  // namespace tpack
