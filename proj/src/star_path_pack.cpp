#include "tpack/star_path_pack.hpp"

#include <algorithm>
#include <queue>

#include "tpack/errors.hpp"

namespace tpack {

Tree path_tree(int order) {
  std::vector<Edge> edges;
  for (int r = 1; r < order; ++r) edges.emplace_back(r, r + 1);
  return Tree(Graph(order, edges));
}

Tree star_tree(int order) {
  std::vector<Edge> edges;
  for (int r = 2; r <= order; ++r) edges.emplace_back(1, r);
  return Tree(Graph(order, edges));
}

SmallTree make_small_tree(CompletionShape shape, const Tree& completion, bool type_iii,
                          std::vector<Edge> extra_edges) {
  SmallTree st;
  st.completion = completion;
  st.shape = shape;
  st.type_iii = type_iii;
  st.extra_edges = std::move(extra_edges);
  return st;
}

SmallTree small_tree_from(const ReservedSets& rs, const Tree& t, TreeType type) {
  SmallTree st = make_small_tree(rs.shape, rs.completion, type == TreeType::III, rs.extra_edges);
  for (int r = 1; r <= rs.size(); ++r) {
    if (rs.shape == CompletionShape::Star && r == 1) continue;
    if (t.degree(rs.reserved[r - 1]) > rs.completion.degree(r)) st.avoid_centers.push_back(r);
  }
  return st;
}

std::vector<Vertex> SmallPacking::type_iii_centers(std::span<const SmallTree> trees) const {
  std::vector<Vertex> out;
  for (std::size_t j = 0; j < trees.size(); ++j)
    if (trees[j].type_iii) out.push_back(h[j](1));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct BudgetExceeded {};

struct Flags {
  bool star_rule = true;
  bool redundancy = true;
};

class SmallSearch {
 public:
  SmallSearch(std::span<const SmallTree> trees, Flags flags, std::int64_t budget)
      : trees_(trees), flags_(flags), budget_(budget), k_(static_cast<int>(trees.size())) {
    used_.assign(static_cast<std::size_t>(k_ + 1) * (k_ + 1), 0);
    free_.assign(k_ + 1, k_ - 1);
    in_z_.assign(k_ + 1, 0);
    forbidden_.assign(k_ + 1, 0);
    img_.resize(trees.size());
    order_.resize(trees.size());
    parent_.resize(trees.size());
    for (std::size_t j = 0; j < trees.size(); ++j) {
      const Tree& t = trees[j].completion;
      img_[j].assign(t.order() + 1, 0);
      parent_[j].assign(t.order() + 1, 0);
      std::vector<char> seen(t.order() + 1, 0);
      std::queue<Vertex> bfs;
      bfs.push(1);
      seen[1] = 1;
      while (!bfs.empty()) {
        const Vertex v = bfs.front();
        bfs.pop();
        order_[j].push_back(v);
        for (Vertex w : t.neighbors(v)) {
          if (seen[w]) continue;
          seen[w] = 1;
          parent_[j][w] = v;
          bfs.push(w);
        }
      }
    }
  }

  bool run() { return place(0, 0); }
  std::int64_t nodes() const { return nodes_; }
  const std::vector<std::vector<Vertex>>& images() const { return img_; }

 private:
  char& used(Vertex a, Vertex b) { return used_[static_cast<std::size_t>(a) * (k_ + 1) + b]; }

  bool in_current(std::size_t j, Vertex h) const {
    const auto& im = img_[j];
    return std::find(im.begin() + 1, im.end(), h) != im.end();
  }

  bool admissible(std::size_t j, Vertex v, Vertex h) {
    const SmallTree& st = trees_[j];
    if (flags_.star_rule && st.shape == CompletionShape::Star && forbidden_[h]) return false;
    if (!flags_.redundancy) return true;
    const bool new_center = st.type_iii && v == 1;
    if (!new_center) {
      if (in_z_[h] &&
          std::find(st.avoid_centers.begin(), st.avoid_centers.end(), v) != st.avoid_centers.end())
        return false;
      if (in_z_[h]) {
        for (const Edge& e : st.extra_edges) {
          const Vertex other = e.u == v ? e.v : (e.v == v ? e.u : 0);
          if (other != 0 && img_[j][other] != 0 && in_z_[img_[j][other]]) return false;
        }
      }
      return true;
    }
    // h joins the center set: re-check everything already placed.
    for (std::size_t i = 0; i < j; ++i) {
      for (const Edge& e : trees_[i].extra_edges) {
        const Vertex a = img_[i][e.u];
        const Vertex b = img_[i][e.v];
        if ((a == h && in_z_[b]) || (b == h && in_z_[a])) return false;
      }
      for (Vertex r : trees_[i].avoid_centers)
        if (img_[i][r] == h) return false;
    }
    return true;
  }

  bool place(std::size_t j, std::size_t idx) {
    if (j == trees_.size()) return true;
    if (idx == order_[j].size()) return place(j + 1, 0);
    if (++nodes_ > budget_) throw BudgetExceeded{};
    const SmallTree& st = trees_[j];
    const Vertex v = order_[j][idx];
    const Vertex p = parent_[j][v];
    const Vertex ph = p ? img_[j][p] : 0;
    const int need = st.completion.degree(v);
    Vertex lower = 0;
    if (st.shape == CompletionShape::Star && v != 1 && idx >= 2) lower = img_[j][order_[j][idx - 1]];
    bool tried_untouched = false;
    for (Vertex h = lower + 1; h <= k_; ++h) {
      if (free_[h] < need || in_current(j, h)) continue;
      if (ph && used(h, ph)) continue;
      const bool untouched = free_[h] == k_ - 1;
      if (untouched && tried_untouched) continue;
      if (!admissible(j, v, h)) continue;
      if (untouched) tried_untouched = true;

      img_[j][v] = h;
      if (ph) {
        used(h, ph) = used(ph, h) = 1;
        --free_[h];
        --free_[ph];
      }
      const bool new_center = flags_.redundancy && st.type_iii && v == 1;
      const bool new_forbidden = st.shape == CompletionShape::Star && v == 1;
      if (new_center) in_z_[h] = 1;
      if (new_forbidden) forbidden_[h] = 1;

      if (place(j, idx + 1)) return true;

      if (new_center) in_z_[h] = 0;
      if (new_forbidden) forbidden_[h] = 0;
      if (ph) {
        used(h, ph) = used(ph, h) = 0;
        ++free_[h];
        ++free_[ph];
      }
      img_[j][v] = 0;
    }
    return false;
  }

  std::span<const SmallTree> trees_;
  Flags flags_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  int k_;
  std::vector<char> used_;
  std::vector<int> free_;
  std::vector<char> in_z_;
  std::vector<char> forbidden_;
  std::vector<std::vector<Vertex>> img_;
  std::vector<std::vector<Vertex>> order_;
  std::vector<std::vector<Vertex>> parent_;
};

}  // namespace

SmallPacking pack_small(std::span<const SmallTree> trees, std::int64_t node_budget) {
  const int k = static_cast<int>(trees.size());
  for (int j = 0; j < k; ++j) {
    const SmallTree& st = trees[j];
    if (st.order() != k - j)
      throw std::invalid_argument("pack_small: tree " + std::to_string(j) + " has order " +
                                  std::to_string(st.order()) + ", expected " +
                                  std::to_string(k - j));
    const Tree expect = st.shape == CompletionShape::Star ? star_tree(st.order())
                                                          : path_tree(st.order());
    if (!(st.completion == expect))
      throw std::invalid_argument("pack_small: tree " + std::to_string(j) +
                                  " is not in canonical path/star labelling");
    if (st.type_iii && st.shape != CompletionShape::Star)
      throw std::invalid_argument("pack_small: type-III completion must be a star");
  }

  SmallSearch search(trees, Flags{}, node_budget);
  bool found = false;
  try {
    found = search.run();
  } catch (const BudgetExceeded&) {
    throw SmallPackingInfeasible("search budget of " + std::to_string(node_budget) +
                                 " nodes exhausted");
  }
  if (!found) {
    // Find the first condition whose removal makes the search succeed.
    auto feasible = [&](Flags f) {
      SmallSearch s(trees, f, node_budget);
      try {
        return s.run();
      } catch (const BudgetExceeded&) {
        return false;
      }
    };
    std::string which = "edge-disjointness";
    if (feasible(Flags{true, false}))
      which = "type-III center conditions (redundant extra edges, avoid sets)";
    else if (feasible(Flags{false, false}))
      which = "star-center avoidance";
    throw SmallPackingInfeasible("no packing of the reserved block satisfies " + which);
  }

  SmallPacking sp;
  sp.nodes = search.nodes();
  for (int j = 0; j < k; ++j) {
    const auto& im = search.images()[j];
    sp.h.emplace_back(std::vector<Vertex>(im.begin() + 1, im.end()));
    if (trees[j].shape == CompletionShape::Star) sp.star_centers[j] = im[1];
  }
  return sp;
}

std::vector<std::vector<EdgeTag>> classify_edges(std::span<const SmallTree> trees,
                                                 const SmallPacking& sp) {
  const auto centers = sp.type_iii_centers(trees);
  auto is_center = [&](Vertex h) { return std::binary_search(centers.begin(), centers.end(), h); };
  std::vector<std::vector<EdgeTag>> tags(trees.size());
  for (std::size_t j = 0; j < trees.size(); ++j) {
    for (const Edge& e : trees[j].completion.graph().edges()) {
      const bool essential = is_center(sp.h[j](e.u)) && is_center(sp.h[j](e.v));
      tags[j].push_back(essential ? EdgeTag::Essential : EdgeTag::Redundant);
    }
  }
  return tags;
}

std::optional<std::string> check_small_packing(std::span<const SmallTree> trees,
                                               const SmallPacking& sp) {
  const int k = static_cast<int>(trees.size());
  if (static_cast<int>(sp.h.size()) != k) return "wrong number of maps";
  std::vector<Graph> guests;
  for (const auto& st : trees) guests.push_back(st.completion.graph());
  const auto vr = verify_packing(guests, sp.h, k);
  if (!vr.valid()) return "not a packing: " + vr.message;

  for (int i = 0; i < k; ++i) {
    if (trees[i].shape != CompletionShape::Star) continue;
    for (int j = 0; j < i; ++j) {
      if (trees[j].shape != CompletionShape::Star) continue;
      const Vertex c = sp.h[j](1);
      for (Vertex h : sp.h[i].images())
        if (h == c)
          return "star " + std::to_string(i) + " uses the center of star " + std::to_string(j);
    }
  }

  const auto centers = sp.type_iii_centers(trees);
  auto is_center = [&](Vertex h) { return std::binary_search(centers.begin(), centers.end(), h); };
  const auto tags = classify_edges(trees, sp);
  for (int j = 0; j < k; ++j) {
    const auto& edges = trees[j].completion.graph().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (tags[j][e] != EdgeTag::Essential) continue;
      const auto& extra = trees[j].extra_edges;
      if (std::find(extra.begin(), extra.end(), edges[e]) != extra.end())
        return "essential extra edge " + to_string(edges[e]) + " in tree " + std::to_string(j);
    }
    for (Vertex r : trees[j].avoid_centers)
      if (is_center(sp.h[j](r)))
        return "vertex " + std::to_string(r) + " of tree " + std::to_string(j) +
               " lands on a type-III center";
  }
  return std::nullopt;
}

}  // namespace tpack
