#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpack/graph.hpp"
#include "tpack/profile.hpp"

namespace tpack {

/// Pre-placed vertices: guest[i] must land on host[i].
struct PinConstraint {
  std::vector<Vertex> host;
  std::vector<Vertex> guest;

  std::size_t size() const { return host.size(); }
};

/// Throws std::invalid_argument unless the pin is a well-formed injection
/// that packs T[I'] with G[I]. Returns the violated degree caps
/// (|I| <= k, d_G <= 2k on I, d_T <= 2 on I') as messages.
std::vector<std::string> check_pin(const Graph& g, const Graph& t, const PinConstraint& pin,
                                   int k);

/// Line-oriented decision log.
struct StageTrace {
  std::vector<std::string> lines;
  int resamples = 0;

  void add(std::string line) { lines.push_back(std::move(line)); }
  std::string text() const;
};

/// Partial packing f: V(G) -> V(G') where G' is the guest forest padded with
/// isolated vertices to the host order.
class MatchState {
 public:
  MatchState(const Graph& host, const Graph& guest);

  const Graph& host() const { return *host_; }
  const Graph& guest() const { return *guest_; }
  int n() const { return host_->order(); }

  bool host_matched(Vertex u) const { return f_[u] != 0; }
  bool guest_matched(Vertex g) const { return finv_[g] != 0; }
  Vertex image(Vertex u) const { return f_[u]; }
  Vertex preimage(Vertex g) const { return finv_[g]; }
  int matched() const { return count_; }

  /// Both unmatched and no host edge ux with f(x) adjacent to g.
  bool can_match(Vertex u, Vertex g) const;
  /// Throws std::logic_error if the pair is not matchable.
  void match(Vertex u, Vertex g);

  /// f' restricted to guest vertices 1..guest_order, as host labels.
  Embedding guest_embedding(int guest_order) const;

 private:
  const Graph* host_;
  const Graph* guest_;
  std::vector<Vertex> f_;
  std::vector<Vertex> finv_;
  int count_ = 0;
};

/// Final two stages shared by both embedders: take a maximum independent set
/// J' of the unmatched guest vertices, match every other unmatched guest
/// vertex greedily (guest rank order, lowest host label), then match J' by a
/// maximum bipartite matching. Throws StageFailure naming the stage.
void complete_by_independent_set(MatchState& st, const SortedVertexOrder& guest_order,
                                 const std::string& greedy_stage, const std::string& hall_stage,
                                 StageTrace& trace);

/// Extracts f', checks it packs, agrees with the pin and (unless the host or
/// the tree alone already exceeds it) respects the degree budget; throws StageFailure on a
/// budget violation.
Embedding finish_embedding(const MatchState& st, const Graph& t, const PinConstraint& pin,
                           double budget, int& union_degree, StageTrace& trace);

/// The tree padded with isolated vertices up to order n.
Graph pad_guest(const Graph& t, int n);

/// Maximum bipartite matching (Hopcroft-Karp). adj[l] lists right vertices
/// 0..right_size-1. Returns match_of_left (-1 when unmatched).
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj,
                                        int right_size);

/// Maximum independent set of the forest induced on `allowed` (mask indexed
/// by vertex). Leaf-greedy, exact on forests. Ascending.
std::vector<Vertex> forest_max_independent_set(const Graph& forest, const std::vector<char>& allowed);

/// Maximum degree of f(T) + G.
int union_max_degree(const Graph& host, const Graph& t, const Embedding& f);

/// Throws std::logic_error unless f packs T with G (injective, disjoint edges).
void assert_packs(const Graph& host, const Graph& t, const Embedding& f);

}  // namespace tpack
