#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpack/graph.hpp"

namespace tpack {

/// Center-rooted AHU encoding; equal iff the trees are isomorphic.
std::string canonical_form(const Tree& t);

/// One tree per isomorphism class, sorted by canonical form. order <= 12.
std::vector<Tree> enumerate_trees(int order);

struct ExactBudget {
  std::int64_t max_nodes = 500'000'000;
  double seconds = 120.0;
};

struct ExactResult {
  enum class Status { Found, NoPacking, Timeout };
  Status status = Status::NoPacking;
  /// Found: one map per guest, in input order.
  std::vector<Embedding> maps;
  std::int64_t nodes = 0;
};

std::string to_string(ExactResult::Status s);

/// Complete backtracking search for an edge-disjoint placement of the guests
/// into K_host_n. Guests go in decreasing edge count, vertices in DFS order;
/// interchangeable untouched host vertices are tried once.
ExactResult exact_pack(std::span<const Graph> guests, int host_n, const ExactBudget& budget = {});

struct SuiteReport {
  int total = 0;
  int packed = 0;
  int failed = 0;
  int timeout = 0;
  /// Per-n counts and every failure or timeout verbatim.
  std::vector<std::string> lines;

  std::string summary() const;
  std::string text() const;
};

/// Every tuple of isomorphism classes of orders n, n-1, ..., n-k+1 for each
/// n in [n_min, n_max], checked with exact_pack.
SuiteReport corollary_suite(int n_min, int n_max, int k, const ExactBudget& budget = {});

/// `samples` uniformly drawn class tuples at a single n.
SuiteReport sampled_suite(int n, int k, int samples, std::uint64_t seed,
                          const ExactBudget& budget = {});

}  // namespace tpack
