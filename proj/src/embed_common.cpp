#include "tpack/embed_common.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "tpack/errors.hpp"

namespace tpack {

std::vector<std::string> check_pin(const Graph& g, const Graph& t, const PinConstraint& pin,
                                   int k) {
  if (pin.host.size() != pin.guest.size())
    throw std::invalid_argument("pin: |I| != |I'|");
  std::vector<char> seen_host(g.order() + 1, 0);
  std::vector<char> seen_guest(t.order() + 1, 0);
  for (std::size_t i = 0; i < pin.size(); ++i) {
    const Vertex h = pin.host[i];
    const Vertex v = pin.guest[i];
    if (!g.contains(h) || !t.contains(v)) throw std::invalid_argument("pin: label out of range");
    if (seen_host[h] || seen_guest[v]) throw std::invalid_argument("pin: not injective");
    seen_host[h] = seen_guest[v] = 1;
  }
  for (std::size_t a = 0; a < pin.size(); ++a)
    for (std::size_t b = a + 1; b < pin.size(); ++b)
      if (t.adjacent(pin.guest[a], pin.guest[b]) && g.adjacent(pin.host[a], pin.host[b]))
        throw std::invalid_argument("pin: h' does not pack T[I'] with G[I] (edge " +
                                    to_string(Edge(pin.host[a], pin.host[b])) + ")");
  std::vector<std::string> issues;
  if (static_cast<int>(pin.size()) > k) issues.push_back("|I| > k");
  for (std::size_t i = 0; i < pin.size(); ++i) {
    if (g.degree(pin.host[i]) > 2 * k)
      issues.push_back("d_G(" + std::to_string(pin.host[i]) + ")=" +
                       std::to_string(g.degree(pin.host[i])) + " > 2k");
    if (t.degree(pin.guest[i]) > 2)
      issues.push_back("d_T(" + std::to_string(pin.guest[i]) + ")=" +
                       std::to_string(t.degree(pin.guest[i])) + " > 2");
  }
  return issues;
}

std::string StageTrace::text() const {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

MatchState::MatchState(const Graph& host, const Graph& guest)
    : host_(&host), guest_(&guest), f_(host.order() + 1, 0), finv_(guest.order() + 1, 0) {
  if (host.order() != guest.order())
    throw std::invalid_argument("MatchState: host and padded guest differ in order");
}

bool MatchState::can_match(Vertex u, Vertex g) const {
  if (f_[u] != 0 || finv_[g] != 0) return false;
  if (host_->degree(u) <= guest_->degree(g)) {
    for (Vertex x : host_->neighbors(u))
      if (f_[x] != 0 && guest_->adjacent(f_[x], g)) return false;
  } else {
    for (Vertex y : guest_->neighbors(g))
      if (finv_[y] != 0 && host_->adjacent(finv_[y], u)) return false;
  }
  return true;
}

void MatchState::match(Vertex u, Vertex g) {
  if (!can_match(u, g))
    throw std::logic_error("MatchState: invalid match " + std::to_string(u) + "->" +
                           std::to_string(g));
  f_[u] = g;
  finv_[g] = u;
  ++count_;
}

Embedding MatchState::guest_embedding(int guest_order) const {
  std::vector<Vertex> images(guest_order);
  for (Vertex g = 1; g <= guest_order; ++g) {
    if (finv_[g] == 0) throw std::logic_error("MatchState: guest vertex left unmatched");
    images[g - 1] = finv_[g];
  }
  return Embedding(std::move(images));
}

void complete_by_independent_set(MatchState& st, const SortedVertexOrder& guest_order,
                                 const std::string& greedy_stage, const std::string& hall_stage,
                                 StageTrace& trace) {
  const int n = st.n();
  std::vector<char> free_guest(n + 1, 0);
  for (Vertex g = 1; g <= n; ++g) free_guest[g] = !st.guest_matched(g);
  const auto independent = forest_max_independent_set(st.guest(), free_guest);
  std::vector<char> in_j(n + 1, 0);
  for (Vertex g : independent) in_j[g] = 1;
  trace.add(greedy_stage + " independent=" + std::to_string(independent.size()));

  for (Vertex g : guest_order.vertices()) {
    if (st.guest_matched(g) || in_j[g]) continue;
    Vertex chosen = 0;
    for (Vertex u = 1; u <= n && !chosen; ++u)
      if (st.can_match(u, g)) chosen = u;
    if (!chosen)
      throw StageFailure(greedy_stage, "no host vertex for guest " + std::to_string(g));
    st.match(chosen, g);
  }

  std::vector<Vertex> left;
  for (Vertex u = 1; u <= n; ++u)
    if (!st.host_matched(u)) left.push_back(u);
  std::vector<std::vector<int>> adj(left.size());
  for (std::size_t l = 0; l < left.size(); ++l)
    for (std::size_t r = 0; r < independent.size(); ++r)
      if (st.can_match(left[l], independent[r])) adj[l].push_back(static_cast<int>(r));
  const auto m = max_bipartite_matching(adj, static_cast<int>(independent.size()));
  const auto matched = std::count_if(m.begin(), m.end(), [](int r) { return r >= 0; });
  trace.add(hall_stage + " left=" + std::to_string(left.size()) +
            " matched=" + std::to_string(matched));
  if (static_cast<std::size_t>(matched) != left.size() || left.size() != independent.size())
    throw StageFailure(hall_stage, "bipartite matching covers " + std::to_string(matched) +
                                       " of " + std::to_string(left.size()));
  for (std::size_t l = 0; l < left.size(); ++l) st.match(left[l], independent[m[l]]);
}

Embedding finish_embedding(const MatchState& st, const Graph& t, const PinConstraint& pin,
                           double budget, int& union_degree, StageTrace& trace) {
  Embedding f = st.guest_embedding(t.order());
  assert_packs(st.host(), t, f);
  for (std::size_t i = 0; i < pin.size(); ++i)
    if (f(pin.guest[i]) != pin.host[i]) throw std::logic_error("pinned vertex moved");
  union_degree = union_max_degree(st.host(), t, f);
  trace.add("union-max-degree=" + std::to_string(union_degree));
  if (union_degree > budget && st.host().max_degree() <= budget && t.max_degree() <= budget)
    throw StageFailure("degree-budget", "max degree " + std::to_string(union_degree) +
                                            " exceeds " + std::to_string(budget));
  return f;
}

Graph pad_guest(const Graph& t, int n) {
  if (t.order() > n) throw std::invalid_argument("guest larger than host");
  return Graph(n, t.edges());
}

std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj,
                                        int right_size) {
  const int left = static_cast<int>(adj.size());
  constexpr int inf = std::numeric_limits<int>::max();
  std::vector<int> match_l(left, -1), match_r(right_size, -1), dist(left);

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int l = 0; l < left; ++l) {
      dist[l] = match_l[l] == -1 ? 0 : inf;
      if (dist[l] == 0) q.push(l);
    }
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        const int next = match_r[r];
        if (next == -1) {
          found = true;
        } else if (dist[next] == inf) {
          dist[next] = dist[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> it(left);
  auto dfs = [&](auto&& self, int l) -> bool {
    for (; it[l] < adj[l].size(); ++it[l]) {
      const int r = adj[l][it[l]];
      const int next = match_r[r];
      if (next == -1 || (dist[next] == dist[l] + 1 && self(self, next))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = inf;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int l = 0; l < left; ++l)
      if (match_l[l] == -1) dfs(dfs, l);
  }
  return match_l;
}

std::vector<Vertex> forest_max_independent_set(const Graph& forest,
                                               const std::vector<char>& allowed) {
  const int n = forest.order();
  std::vector<char> visited(n + 1, 0), taken(n + 1, 0);
  std::vector<Vertex> parent(n + 1, 0), post;
  for (Vertex root = 1; root <= n; ++root) {
    if (!allowed[root] || visited[root]) continue;
    // Iterative DFS producing a post-order of this component.
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    visited[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto nb = forest.neighbors(v);
      if (i < nb.size()) {
        const Vertex w = nb[i++];
        if (allowed[w] && !visited[w]) {
          if (w == parent[v]) continue;
          visited[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        post.push_back(v);
        stack.pop_back();
      }
    }
  }
  // A vertex joins the set when none of its children did.
  for (Vertex v : post) {
    bool child_taken = false;
    for (Vertex w : forest.neighbors(v))
      if (allowed[w] && parent[w] == v && taken[w]) child_taken = true;
    taken[v] = !child_taken;
  }
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n; ++v)
    if (taken[v]) out.push_back(v);
  return out;
}

int union_max_degree(const Graph& host, const Graph& t, const Embedding& f) {
  std::vector<int> deg(host.order() + 1, 0);
  for (Vertex v = 1; v <= host.order(); ++v) deg[v] = host.degree(v);
  for (Vertex v = 1; v <= t.order(); ++v) deg[f(v)] += t.degree(v);
  return *std::max_element(deg.begin(), deg.end());
}

void assert_packs(const Graph& host, const Graph& t, const Embedding& f) {
  if (f.guest_order() != t.order() || !f.valid_for(host.order()))
    throw std::logic_error("embedding is not an injection into the host");
  for (const Edge& e : t.edges())
    if (host.adjacent(f(e.u), f(e.v)))
      throw std::logic_error("embedding reuses host edge " + to_string(Edge(f(e.u), f(e.v))));
}

}  // namespace tpack
