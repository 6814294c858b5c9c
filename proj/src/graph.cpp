#include "tpack/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace tpack {

std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

Graph::Graph(int n) : Graph(n, std::span<const Edge>{}) {}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw GraphError("negative vertex count");
  words_ = static_cast<std::size_t>(n) / 64 + 1;
  adj_.resize(static_cast<std::size_t>(n) + 1);
  bits_.assign((static_cast<std::size_t>(n) + 1) * words_, 0);
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    e = Edge(e.u, e.v);
    if (e.u == e.v) throw GraphError("self-loop at " + std::to_string(e.u));
    if (e.u < 1 || e.v > n) throw GraphError("edge " + to_string(e) + " out of range");
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw GraphError("parallel edge");
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    bits_[static_cast<std::size_t>(e.u) * words_ + static_cast<std::size_t>(e.v) / 64] |=
        std::uint64_t{1} << (e.v % 64);
    bits_[static_cast<std::size_t>(e.v) * words_ + static_cast<std::size_t>(e.u) / 64] |=
        std::uint64_t{1} << (e.u % 64);
  }
  for (auto& row : adj_) std::sort(row.begin(), row.end());
}

int Graph::max_degree() const {
  int best = 0;
  for (Vertex v = 1; v <= n_; ++v) best = std::max(best, degree(v));
  return best;
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int best = n_;
  for (Vertex v = 1; v <= n_; ++v) best = std::min(best, degree(v));
  return best;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<Vertex> stack{1};
  seen[1] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

bool GraphBuilder::add_edge(Vertex a, Vertex b) {
  if (a == b) throw GraphError("self-loop at " + std::to_string(a));
  if (a < 1 || b < 1 || a > n_ || b > n_) throw GraphError("edge endpoint out of range");
  Edge e(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  edges_.insert(it, e);
  return true;
}

bool GraphBuilder::has_edge(Vertex a, Vertex b) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
}

Graph GraphBuilder::build() const { return Graph(n_, edges_); }

bool is_tree(const Graph& g) {
  return g.order() >= 1 && g.size() == static_cast<std::size_t>(g.order() - 1) &&
         g.is_connected();
}

Tree::Tree(Graph g) : g_(std::move(g)) {
  if (!is_tree(g_)) throw GraphError("graph is not a tree");
}

std::vector<Vertex> Tree::leaves() const {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= order(); ++v)
    if (degree(v) == 1) out.push_back(v);
  return out;
}

Vertex Tree::max_degree_vertex() const {
  Vertex best = 1;
  for (Vertex v = 2; v <= order(); ++v)
    if (degree(v) > degree(best)) best = v;
  return best;
}

bool Embedding::valid_for(int host_n) const {
  std::vector<char> used(static_cast<std::size_t>(std::max(host_n, 0)) + 1, 0);
  for (Vertex img : images_) {
    if (img < 1 || img > host_n || used[img]) return false;
    used[img] = 1;
  }
  return true;
}

Graph oplus(const Graph& g, const Graph& h) {
  std::vector<Edge> all;
  all.reserve(g.size() + h.size());
  std::set_union(g.edges().begin(), g.edges().end(), h.edges().begin(), h.edges().end(),
                 std::back_inserter(all));
  return Graph(std::max(g.order(), h.order()), all);
}

Graph apply(const Embedding& f, const Graph& g, int host_n) {
  if (f.guest_order() != g.order())
    throw GraphError("embedding order " + std::to_string(f.guest_order()) +
                     " does not match guest order " + std::to_string(g.order()));
  if (!f.valid_for(host_n)) throw GraphError("embedding is not an injection into 1.." +
                                             std::to_string(host_n));
  std::vector<Edge> image;
  image.reserve(g.size());
  for (const Edge& e : g.edges()) image.emplace_back(f(e.u), f(e.v));
  return Graph(host_n, image);
}

VerifyResult verify_packing(std::span<const Graph> guests, std::span<const Embedding> maps,
                            int host_n) {
  VerifyResult out;
  if (guests.size() != maps.size()) {
    out.status = VerifyResult::Status::Malformed;
    out.message = "guest/embedding count mismatch";
    return out;
  }
  for (std::size_t j = 0; j < guests.size(); ++j) {
    if (maps[j].guest_order() != guests[j].order() || !maps[j].valid_for(host_n)) {
      out.status = VerifyResult::Status::Malformed;
      out.first = out.second = j;
      out.message = "embedding " + std::to_string(j) + " is not an injection of its guest into 1.." +
                    std::to_string(host_n);
      return out;
    }
  }
  std::map<Edge, std::size_t> owner;
  for (std::size_t j = 0; j < guests.size(); ++j) {
    std::vector<Edge> image;
    image.reserve(guests[j].size());
    for (const Edge& e : guests[j].edges()) image.emplace_back(maps[j](e.u), maps[j](e.v));
    std::sort(image.begin(), image.end());
    for (const Edge& e : image) {
      auto [it, inserted] = owner.emplace(e, j);
      if (!inserted) {
        out.status = VerifyResult::Status::Conflict;
        out.first = it->second;
        out.second = j;
        out.edge = e;
        out.message = "embeddings " + std::to_string(it->second) + " and " + std::to_string(j) +
                      " share edge " + to_string(e);
        return out;
      }
    }
  }
  return out;
}

VerifyResult verify_packing(std::span<const Tree> guests, std::span<const Embedding> maps,
                            int host_n) {
  std::vector<Graph> graphs;
  graphs.reserve(guests.size());
  for (const Tree& t : guests) graphs.push_back(t.graph());
  return verify_packing(std::span<const Graph>(graphs), maps, host_n);
}

SortedVertexOrder::SortedVertexOrder(std::vector<Vertex> order) : order_(std::move(order)) {
  const Vertex top = order_.empty() ? 0 : *std::max_element(order_.begin(), order_.end());
  rank_.assign(static_cast<std::size_t>(top) + 1, 0);
  for (std::size_t i = 0; i < order_.size(); ++i) rank_[order_[i]] = static_cast<int>(i) + 1;
}

SortedVertexOrder sorted_vertices(const Graph& g) {
  std::vector<Vertex> order(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < g.order(); ++i) order[i] = i + 1;
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  const double m = static_cast<double>(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (static_cast<double>(g.degree(order[i])) * static_cast<double>(i + 1) > 2.0 * m)
      throw std::logic_error("degree-rank bound violated at rank " + std::to_string(i + 1));
  }
  return SortedVertexOrder(std::move(order));
}

double binomial_tail_bound(int trials, double p, double mu, TailSide side) {
  if (trials < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("bad binomial parameters");
  const double mean = static_cast<double>(trials) * p;
  if (side == TailSide::Upper) {
    if (mu < mean) throw std::invalid_argument("upper tail requires mu >= np");
    return std::exp(-mu / 3.0);
  }
  if (mu > mean) throw std::invalid_argument("lower tail requires mu <= np");
  return std::exp(-mu / 8.0);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph out;
  out.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(out.to_parent.begin(), out.to_parent.end());
  out.to_parent.erase(std::unique(out.to_parent.begin(), out.to_parent.end()),
                      out.to_parent.end());
  std::vector<Vertex> local(static_cast<std::size_t>(g.order()) + 1, 0);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
    if (!g.contains(out.to_parent[i])) throw GraphError("induced vertex out of range");
    local[out.to_parent[i]] = static_cast<Vertex>(i) + 1;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (local[e.u] && local[e.v]) edges.emplace_back(local[e.u], local[e.v]);
  out.graph = Graph(static_cast<int>(out.to_parent.size()), edges);
  return out;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& dst) {
    while (std::getline(in, dst)) {
      if (dst.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw GraphError("edge list: missing header");
  std::istringstream header(line);
  long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) throw GraphError("edge list: bad header '" + line + "'");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    if (!next_line(line)) throw GraphError("edge list: expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long u = 0, v = 0;
    if (!(row >> u >> v)) throw GraphError("edge list: bad edge line '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph(static_cast<int>(n), edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace tpack
