#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpack {

/// Vertices are dense 1-based labels.
using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  /// Stores the pair as (min, max).
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected simple graph on vertices 1..n. Immutable once built; use
/// GraphBuilder to accumulate edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Throws GraphError on self-loops, parallel edges or out-of-range endpoints.
  Graph(int n, std::span<const Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  /// Sorted ascending.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted ascending.
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex a, Vertex b) const {
    const auto bit = static_cast<std::size_t>(b);
    return (bits_[static_cast<std::size_t>(a) * words_ + bit / 64] >> (bit % 64)) & 1U;
  }
  bool contains(Vertex v) const { return v >= 1 && v <= n_; }
  int max_degree() const;
  int min_degree() const;
  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n) {}
  /// Returns false if the edge was already present.
  bool add_edge(Vertex a, Vertex b);
  bool has_edge(Vertex a, Vertex b) const;
  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  Graph build() const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// A connected acyclic Graph.
class Tree {
 public:
  Tree() = default;
  /// Throws GraphError if `g` is not a tree.
  explicit Tree(Graph g);

  const Graph& graph() const { return g_; }
  int order() const { return g_.order(); }
  int degree(Vertex v) const { return g_.degree(v); }
  std::span<const Vertex> neighbors(Vertex v) const { return g_.neighbors(v); }
  /// Ascending.
  std::vector<Vertex> leaves() const;
  /// Maximum-degree vertex, lowest label on ties.
  Vertex max_degree_vertex() const;

  friend bool operator==(const Tree& a, const Tree& b) { return a.g_ == b.g_; }

 private:
  Graph g_;
};

bool is_tree(const Graph& g);

/// Injection from guest vertices 1..guest_order into host labels.
class Embedding {
 public:
  Embedding() = default;
  /// images[i] is the host label of guest vertex i + 1.
  explicit Embedding(std::vector<Vertex> images) : images_(std::move(images)) {}

  int guest_order() const { return static_cast<int>(images_.size()); }
  Vertex operator()(Vertex guest) const { return images_[guest - 1]; }
  std::span<const Vertex> images() const { return images_; }
  /// Injective with every image in 1..host_n.
  bool valid_for(int host_n) const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<Vertex> images_;
};

/// Edge union on the union label range.
Graph oplus(const Graph& g, const Graph& h);

/// The image graph f(G) on host_n vertices. Throws GraphError if f is not an
/// injection of V(G) into 1..host_n.
Graph apply(const Embedding& f, const Graph& g, int host_n);

struct VerifyResult {
  enum class Status { Valid, Conflict, Malformed };
  Status status = Status::Valid;
  /// Conflict: indices into the input (first < second) and the shared host edge.
  std::size_t first = 0;
  std::size_t second = 0;
  Edge edge;
  std::string message;

  bool valid() const { return status == Status::Valid; }
};

/// Checks that the image edge sets are pairwise disjoint. Embeddings are
/// scanned in input order and each image edge set in sorted order; the first
/// repeated host edge is reported.
VerifyResult verify_packing(std::span<const Graph> guests, std::span<const Embedding> maps,
                            int host_n);
VerifyResult verify_packing(std::span<const Tree> guests, std::span<const Embedding> maps,
                            int host_n);

/// Vertices by non-increasing degree, ties by ascending label.
class SortedVertexOrder {
 public:
  SortedVertexOrder() = default;
  explicit SortedVertexOrder(std::vector<Vertex> order);

  /// 0-based: vertices()[i - 1] is v_i.
  std::span<const Vertex> vertices() const { return order_; }
  /// v_i for the 1-based rank i.
  Vertex at(int rank) const { return order_[rank - 1]; }
  /// 1-based rank of v.
  int rank(Vertex v) const { return rank_[v]; }
  int size() const { return static_cast<int>(order_.size()); }

 private:
  std::vector<Vertex> order_;
  std::vector<int> rank_;
};

/// Also asserts d(v_i) <= 2m/i at every rank (throws std::logic_error).
SortedVertexOrder sorted_vertices(const Graph& g);

enum class TailSide { Upper, Lower };

/// Chernoff-type bounds for X ~ Bin(trials, p):
///   Upper (mu >= np): Pr[X >= 2mu] <= exp(-mu/3)
///   Lower (mu <= np): Pr[X <= mu/2] <= exp(-mu/8)
double binomial_tail_bound(int trials, double p, double mu, TailSide side);

struct InducedSubgraph {
  Graph graph;
  /// to_parent[i] is the parent label of local vertex i + 1.
  std::vector<Vertex> to_parent;
};

/// G[vertices], relabelled 1..|vertices| in ascending parent-label order.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Text edge-list format: "n m" followed by m lines "u v".
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace tpack
