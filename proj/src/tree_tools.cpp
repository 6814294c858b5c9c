#include "tpack/tree_tools.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "tpack/errors.hpp"

namespace tpack {

Tree decode_prufer(std::span<const Vertex> seq, int n) {
  if (n < 2) throw GraphError("Prüfer decoding needs n >= 2");
  if (static_cast<int>(seq.size()) != n - 2)
    throw GraphError("Prüfer sequence length " + std::to_string(seq.size()) + " != n-2");
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
  for (Vertex v : seq) {
    if (v < 1 || v > n) throw GraphError("Prüfer label " + std::to_string(v) + " out of range");
    ++degree[v];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 1; v <= n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (Vertex v : seq) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1) leaves.push(v);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  return Tree(Graph(n, edges));
}

std::vector<Vertex> encode_prufer(const Tree& t) {
  const int n = t.order();
  std::vector<Vertex> seq;
  if (n <= 2) return seq;
  std::vector<int> degree(static_cast<std::size_t>(n) + 1);
  std::vector<char> removed(static_cast<std::size_t>(n) + 1, 0);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 1; v <= n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) leaves.push(v);
  }
  while (static_cast<int>(seq.size()) < n - 2) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    removed[leaf] = 1;
    for (Vertex w : t.neighbors(leaf)) {
      if (removed[w]) continue;
      seq.push_back(w);
      if (--degree[w] == 1) leaves.push(w);
    }
  }
  return seq;
}

std::optional<PendingPath> find_pending_path(const Tree& t, int order) {
  if (order < 1 || order >= t.order()) return std::nullopt;
  std::optional<PendingPath> best;
  for (Vertex leaf : t.leaves()) {
    // Walk inward from the leaf through degree-2 vertices.
    std::vector<Vertex> walk{leaf};
    Vertex prev = 0;
    Vertex cur = leaf;
    bool ok = true;
    for (int step = 1; step < order && ok; ++step) {
      Vertex next = 0;
      for (Vertex w : t.neighbors(cur))
        if (w != prev) next = w;
      if (next == 0 || t.degree(next) > 2) {
        ok = false;
        break;
      }
      prev = cur;
      cur = next;
      walk.push_back(cur);
    }
    if (!ok) continue;
    Vertex outside = 0;
    for (Vertex w : t.neighbors(cur))
      if (w != prev) outside = w;
    if (outside == 0) continue;
    PendingPath cand{Edge(cur, outside), {walk.rbegin(), walk.rend()}};
    if (!best || cand.cut_edge < best->cut_edge ||
        (cand.cut_edge == best->cut_edge && cand.path.front() == cand.cut_edge.u))
      best = std::move(cand);
  }
  return best;
}

bool is_pending_path(const Tree& t, const PendingPath& p) {
  if (p.path.empty()) return false;
  const Edge e = p.cut_edge;
  if (!t.graph().contains(e.u) || !t.graph().contains(e.v) || !t.graph().adjacent(e.u, e.v))
    return false;
  if (p.path.front() != e.u && p.path.front() != e.v) return false;
  // Component of T - e containing path.front().
  std::vector<char> seen(static_cast<std::size_t>(t.order()) + 1, 0);
  std::vector<Vertex> stack{p.path.front()};
  seen[p.path.front()] = 1;
  std::vector<Vertex> component;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    component.push_back(v);
    for (Vertex w : t.neighbors(v)) {
      if (seen[w] || Edge(v, w) == e) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  std::vector<Vertex> listed = p.path;
  std::sort(listed.begin(), listed.end());
  std::sort(component.begin(), component.end());
  if (listed != component) return false;
  for (std::size_t i = 0; i + 1 < p.path.size(); ++i)
    if (!t.graph().adjacent(p.path[i], p.path[i + 1])) return false;
  return std::all_of(p.path.begin(), p.path.end(), [&](Vertex v) { return t.degree(v) <= 2; });
}

std::string to_string(HypothesisWitness::Branch b) {
  switch (b) {
    case HypothesisWitness::Branch::Trivial: return "trivial";
    case HypothesisWitness::Branch::PendingPath: return "pending-path";
    case HypothesisWitness::Branch::Leaves: return "leaves";
  }
  return "?";
}

std::optional<HypothesisWitness> check_hypothesis(const Tree& t, int j, int k) {
  if (j < 0 || j >= k) throw std::invalid_argument("check_hypothesis: need 0 <= j < k");
  HypothesisWitness w;
  w.required = k - 1 - j;
  if (w.required == 0) return w;
  const auto leaves = t.leaves();
  if (static_cast<int>(leaves.size()) >= w.required)
    w.leaves = std::vector<Vertex>(leaves.begin(), leaves.begin() + w.required);
  w.pending = find_pending_path(t, w.required);
  if (w.pending) {
    w.branch = HypothesisWitness::Branch::PendingPath;
    w.a = w.pending->path;
  } else if (w.leaves) {
    w.branch = HypothesisWitness::Branch::Leaves;
    w.a = *w.leaves;
  } else {
    return std::nullopt;
  }
  return w;
}

std::string to_string(TreeType t) {
  switch (t) {
    case TreeType::I: return "I";
    case TreeType::II: return "II";
    case TreeType::III: return "III";
  }
  return "?";
}

TreeClass classify(const Tree& t, int n, int k, const ConstantsProfile& profile) {
  TreeClass c;
  c.delta_I = profile.delta_I(n, k);
  c.delta_III = profile.delta_III(n);
  const double delta = t.graph().max_degree();
  c.type = delta < c.delta_I ? TreeType::I : (delta < c.delta_III ? TreeType::II : TreeType::III);
  return c;
}

int ReservedSets::local_of(Vertex guest) const {
  for (std::size_t r = 0; r < reserved.size(); ++r)
    if (reserved[r] == guest) return static_cast<int>(r) + 1;
  return 0;
}

namespace {

ReservedSets finish_reserved(const Tree& t, ReservedSets rs) {
  const int m = rs.size();
  std::vector<Edge> local_edges;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      if (t.graph().adjacent(rs.reserved[a - 1], rs.reserved[b - 1])) local_edges.emplace_back(a, b);
  rs.induced = Graph(m, local_edges);

  std::vector<Edge> completion;
  if (rs.shape == CompletionShape::Star) {
    for (int r = 2; r <= m; ++r) completion.emplace_back(1, r);
  } else {
    for (int r = 1; r < m; ++r) completion.emplace_back(r, r + 1);
  }
  rs.completion = Tree(Graph(m, completion));
  for (const Edge& e : rs.induced.edges())
    if (!rs.completion.graph().adjacent(e.u, e.v))
      throw std::logic_error("induced reserved tree is not contained in its completion");
  for (const Edge& e : rs.completion.graph().edges())
    if (!rs.induced.adjacent(e.u, e.v)) rs.extra_edges.push_back(e);
  return rs;
}

}  // namespace

ReservedSets build_reserved(const Tree& t, int j, int k, const TreeClass& cls) {
  const int need = k - 1 - j;
  if (need < 0) throw std::invalid_argument("build_reserved: need j < k");
  const Vertex w = t.max_degree_vertex();
  ReservedSets rs;
  rs.j = j;

  auto star_from = [&](std::vector<Vertex> a) {
    rs.shape = CompletionShape::Star;
    rs.center = w;
    rs.a = std::move(a);
    rs.reserved = {w};
    rs.reserved.insert(rs.reserved.end(), rs.a.begin(), rs.a.end());
    return finish_reserved(t, std::move(rs));
  };
  auto other_leaves = [&] {
    std::vector<Vertex> out;
    for (Vertex v : t.leaves())
      if (v != w) out.push_back(v);
    return out;
  };

  if (cls.type == TreeType::III) {
    std::vector<Vertex> leaf_nbrs;
    for (Vertex v : t.neighbors(w))
      if (t.degree(v) == 1) leaf_nbrs.push_back(v);
    if (static_cast<int>(leaf_nbrs.size()) < need)
      throw HypothesisViolated(j, "type III tree has fewer than " + std::to_string(need) +
                                      " leaf-neighbours of its maximum-degree vertex");
    leaf_nbrs.resize(static_cast<std::size_t>(need));
    return star_from(std::move(leaf_nbrs));
  }
  if (cls.type == TreeType::II) {
    auto leaves = other_leaves();
    if (static_cast<int>(leaves.size()) < need)
      throw HypothesisViolated(j, "type II tree has fewer than " + std::to_string(need) + " leaves");
    leaves.resize(static_cast<std::size_t>(need));
    return star_from(std::move(leaves));
  }

  // Type I: a pending path plus one further leaf l, or else a set of leaves.
  if (need == 0) {
    rs.shape = CompletionShape::Path;
    const auto leaves = t.leaves();
    rs.extra_leaf = leaves.empty() ? Vertex{1} : leaves.front();
    rs.reserved = {*rs.extra_leaf};
    return finish_reserved(t, std::move(rs));
  }
  if (auto pending = find_pending_path(t, need)) {
    std::optional<Vertex> l;
    for (Vertex v : t.leaves()) {
      if (std::find(pending->path.begin(), pending->path.end(), v) == pending->path.end()) {
        l = v;
        break;
      }
    }
    if (l) {
      rs.shape = CompletionShape::Path;
      rs.a = pending->path;
      rs.extra_leaf = *l;
      rs.reserved = {*l};
      rs.reserved.insert(rs.reserved.end(), pending->path.begin(), pending->path.end());
      return finish_reserved(t, std::move(rs));
    }
  }
  auto leaves = other_leaves();
  if (static_cast<int>(leaves.size()) < need)
    throw HypothesisViolated(j, "tree has neither " + std::to_string(need) +
                                    " leaves nor a pending path of that order");
  leaves.resize(static_cast<std::size_t>(need));
  return star_from(std::move(leaves));
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::BoundedDegree: return "bounded-degree";
    case Family::StarHeavy: return "star-heavy";
    case Family::PathHeavy: return "path-heavy";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "uniform") return Family::Uniform;
  if (name == "bounded-degree") return Family::BoundedDegree;
  if (name == "star-heavy") return Family::StarHeavy;
  if (name == "path-heavy") return Family::PathHeavy;
  throw std::invalid_argument("unknown family '" + name + "'");
}

Tree relabel(const Tree& t, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  edges.reserve(t.graph().size());
  for (const Edge& e : t.graph().edges()) edges.emplace_back(perm[e.u - 1], perm[e.v - 1]);
  return Tree(Graph(t.order(), edges));
}

namespace {

Tree shuffled(int order, const std::vector<Edge>& edges, Rng& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) perm[i] = i + 1;
  rng.shuffle(std::span<Vertex>(perm));
  return relabel(Tree(Graph(order, edges)), perm);
}

}  // namespace

Tree random_tree(Family family, int order, int degree_bound, Rng& rng) {
  if (order < 1) throw std::invalid_argument("random_tree: order must be positive");
  if (order == 1) return Tree(Graph(1));
  if (order == 2) return Tree(Graph(2, std::vector<Edge>{{1, 2}}));
  std::vector<Edge> edges;
  switch (family) {
    case Family::Uniform: {
      std::vector<Vertex> seq(static_cast<std::size_t>(order) - 2);
      for (auto& v : seq) v = rng.uniform(1, order);
      return decode_prufer(seq, order);
    }
    case Family::BoundedDegree: {
      if (degree_bound < 2) throw std::invalid_argument("bounded-degree family needs d >= 2");
      std::vector<int> degree(static_cast<std::size_t>(order) + 1, 0);
      std::vector<Vertex> open{1};
      for (Vertex v = 2; v <= order; ++v) {
        const auto pick = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(open.size()) - 1));
        const Vertex parent = open[pick];
        edges.emplace_back(parent, v);
        if (++degree[parent] >= degree_bound) {
          open[pick] = open.back();
          open.pop_back();
        }
        ++degree[v];
        if (degree[v] < degree_bound) open.push_back(v);
      }
      break;
    }
    case Family::StarHeavy: {
      // Hub 1 with degree drawn from [ceil(order/3), order-1]; the remaining
      // vertices hang off random non-hub vertices.
      const int lo = std::max(1, (order + 2) / 3);
      const int hub_degree = rng.uniform(lo, order - 1);
      for (Vertex v = 2; v <= hub_degree + 1; ++v) edges.emplace_back(1, v);
      for (Vertex v = hub_degree + 2; v <= order; ++v) edges.emplace_back(rng.uniform(2, v - 1), v);
      break;
    }
    case Family::PathHeavy: {
      // A spine of at least half the vertices, the rest attached as short legs.
      const int spine = rng.uniform(std::max(2, order / 2), order);
      for (Vertex v = 2; v <= spine; ++v) edges.emplace_back(v - 1, v);
      for (Vertex v = spine + 1; v <= order; ++v) edges.emplace_back(rng.uniform(1, v - 1), v);
      break;
    }
  }
  return shuffled(order, edges, rng);
}

}  // namespace tpack
