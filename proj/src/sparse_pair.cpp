#include "tpack/sparse_pair.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tpack/rng.hpp"

namespace tpack {

bool brandt_precondition(const Graph& g1, const Graph& g2, double alpha) {
  if (g1.order() != g2.order()) throw GraphError("brandt_precondition: orders differ");
  if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must lie in (0, 1/2)");
  const double n = g1.order();
  return static_cast<double>(g1.size()) <= alpha * n &&
         static_cast<double>(g2.size()) <= std::pow(n, 1.5) / (3.0 * std::sqrt(alpha));
}

namespace {

bool packs(const Graph& g1, const Graph& g2, const std::vector<Vertex>& sigma) {
  for (const Edge& e : g1.edges())
    if (g2.adjacent(sigma[e.u], sigma[e.v])) return false;
  return true;
}

Embedding to_embedding(const std::vector<Vertex>& sigma) {
  return Embedding(std::vector<Vertex>(sigma.begin() + 1, sigma.end()));
}

/// Exhaustive search in G1 vertex order by decreasing degree.
std::optional<std::vector<Vertex>> exact_pair(const Graph& g1, const Graph& g2) {
  const int n = g1.order();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g1.degree(a) > g1.degree(b); });
  std::vector<Vertex> sigma(n + 1, 0);
  std::vector<char> used(n + 1, 0);
  auto rec = [&](auto&& self, int idx) -> bool {
    if (idx == n) return true;
    const Vertex v = order[idx];
    for (Vertex h = 1; h <= n; ++h) {
      if (used[h]) continue;
      bool ok = true;
      for (Vertex w : g1.neighbors(v))
        if (sigma[w] && g2.adjacent(h, sigma[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      sigma[v] = h;
      used[h] = 1;
      if (self(self, idx + 1)) return true;
      sigma[v] = 0;
      used[h] = 0;
    }
    return false;
  };
  if (rec(rec, 0)) return sigma;
  return std::nullopt;
}

}  // namespace

std::optional<Embedding> pack_sparse_pair(const Graph& g1, const Graph& g2, std::uint64_t seed,
                                          const PairPackOptions& options) {
  if (g1.order() != g2.order()) throw GraphError("pack_sparse_pair: orders differ");
  const int n = g1.order();
  if (n == 0) return Embedding{};

  const auto& edges = g1.edges();
  const std::size_t m = edges.size();
  std::vector<std::vector<int>> incident(n + 1);
  for (std::size_t e = 0; e < m; ++e) {
    incident[edges[e].u].push_back(static_cast<int>(e));
    incident[edges[e].v].push_back(static_cast<int>(e));
  }
  const std::int64_t patience =
      std::max<std::int64_t>(64, static_cast<std::int64_t>(n * std::log(n + 1.0)));

  std::vector<Vertex> sigma(n + 1);
  std::vector<char> bad(m, 0);
  std::vector<int> bad_list, pos(m, -1);
  auto set_bad = [&](int e, bool b) {
    if (b == static_cast<bool>(bad[e])) return;
    bad[e] = b;
    if (b) {
      pos[e] = static_cast<int>(bad_list.size());
      bad_list.push_back(e);
    } else {
      const int last = bad_list.back();
      bad_list[pos[e]] = last;
      pos[last] = pos[e];
      bad_list.pop_back();
      pos[e] = -1;
    }
  };
  auto conflicting = [&](int e) { return g2.adjacent(sigma[edges[e].u], sigma[edges[e].v]); };

  std::int64_t moves = 0;
  for (std::uint64_t restart = 0; moves < options.move_budget; ++restart) {
    Rng rng(mix_seed(seed, restart));
    std::iota(sigma.begin() + 1, sigma.end(), 1);
    rng.shuffle(std::span<Vertex>(sigma.begin() + 1, sigma.end()));
    bad_list.clear();
    std::fill(bad.begin(), bad.end(), 0);
    std::fill(pos.begin(), pos.end(), -1);
    for (std::size_t e = 0; e < m; ++e) set_bad(static_cast<int>(e), conflicting(static_cast<int>(e)));

    std::int64_t stale = 0;
    while (!bad_list.empty() && stale < patience && moves < options.move_budget) {
      ++moves;
      const int e = bad_list[rng.uniform(0, static_cast<int>(bad_list.size()) - 1)];
      const Vertex x = rng.bernoulli(0.5) ? edges[e].u : edges[e].v;
      Vertex y = rng.uniform(1, n);
      if (y == x) {
        ++stale;
        continue;
      }
      int before = 0, after = 0;
      for (int f : incident[x]) before += bad[f];
      for (int f : incident[y]) before += bad[f];
      std::swap(sigma[x], sigma[y]);
      for (int f : incident[x]) after += conflicting(f);
      for (int f : incident[y]) after += conflicting(f);
      if (g1.adjacent(x, y)) {
        // The shared edge was counted twice on both sides.
        const int shared = static_cast<int>(*std::find_if(incident[x].begin(), incident[x].end(),
                                                          [&](int f) {
                                                            return edges[f] == Edge(x, y);
                                                          }));
        before -= bad[shared];
        after -= conflicting(shared);
      }
      if (after < before) {
        for (int f : incident[x]) set_bad(f, conflicting(f));
        for (int f : incident[y]) set_bad(f, conflicting(f));
        stale = 0;
      } else {
        std::swap(sigma[x], sigma[y]);
        ++stale;
      }
    }
    if (bad_list.empty()) {
      if (!packs(g1, g2, sigma)) throw std::logic_error("pack_sparse_pair: bookkeeping drift");
      return to_embedding(sigma);
    }
  }

  if (n <= options.exact_max_n) {
    if (auto s = exact_pair(g1, g2)) return to_embedding(*s);
  }
  return std::nullopt;
}

}  // namespace tpack
