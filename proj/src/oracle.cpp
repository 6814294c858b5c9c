#include "tpack/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "tpack/rng.hpp"

namespace tpack {

namespace {

std::string rooted_code(const Graph& g, Vertex v, Vertex parent) {
  std::vector<std::string> kids;
  for (Vertex w : g.neighbors(v))
    if (w != parent) kids.push_back(rooted_code(g, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

std::vector<Vertex> centers(const Graph& g) {
  const int n = g.order();
  if (n <= 2) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 1);
    return all;
  }
  std::vector<int> deg(n + 1);
  std::vector<Vertex> layer;
  for (Vertex v = 1; v <= n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer)
      for (Vertex w : g.neighbors(v))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

std::string canonical_form(const Tree& t) {
  std::string best;
  for (Vertex c : centers(t.graph())) {
    std::string code = rooted_code(t.graph(), c, 0);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::vector<Tree> enumerate_trees(int order) {
  if (order < 1 || order > 12) throw std::invalid_argument("enumerate_trees: order must be in 1..12");
  std::map<std::string, Tree> classes;
  const Tree single(Graph(1));
  classes.emplace(canonical_form(single), single);
  for (int m = 2; m <= order; ++m) {
    std::map<std::string, Tree> next;
    for (const auto& [code, t] : classes) {
      for (Vertex v = 1; v < m; ++v) {
        std::vector<Edge> edges = t.graph().edges();
        edges.emplace_back(v, m);
        Tree grown(Graph(m, edges));
        next.emplace(canonical_form(grown), std::move(grown));
      }
    }
    classes = std::move(next);
  }
  std::vector<Tree> out;
  for (auto& [code, t] : classes) out.push_back(std::move(t));
  return out;
}

std::string to_string(ExactResult::Status s) {
  switch (s) {
    case ExactResult::Status::Found: return "found";
    case ExactResult::Status::NoPacking: return "none";
    case ExactResult::Status::Timeout: return "timeout";
  }
  return "?";
}

namespace {

struct TimeoutSignal {};

class ExactSearch {
 public:
  ExactSearch(std::span<const Graph> guests, int n, const ExactBudget& budget)
      : guests_(guests), n_(n), budget_(budget), start_(std::chrono::steady_clock::now()) {
    used_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
    free_.assign(n + 1, n - 1);
    seq_.resize(guests.size());
    std::iota(seq_.begin(), seq_.end(), 0);
    std::stable_sort(seq_.begin(), seq_.end(), [&](std::size_t a, std::size_t b) {
      return guests[a].size() > guests[b].size();
    });
    img_.resize(guests.size());
    order_.resize(guests.size());
    for (std::size_t gi = 0; gi < guests.size(); ++gi) {
      const Graph& g = guests[gi];
      img_[gi].assign(g.order() + 1, 0);
      // DFS from the highest-degree vertex of each component.
      std::vector<Vertex> roots(g.order());
      std::iota(roots.begin(), roots.end(), 1);
      std::stable_sort(roots.begin(), roots.end(),
                       [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
      std::vector<char> seen(g.order() + 1, 0);
      for (Vertex r : roots) {
        if (seen[r]) continue;
        std::vector<Vertex> stack{r};
        while (!stack.empty()) {
          const Vertex v = stack.back();
          stack.pop_back();
          if (seen[v]) continue;
          seen[v] = 1;
          order_[gi].push_back(v);
          const auto nb = g.neighbors(v);
          for (auto it = nb.rbegin(); it != nb.rend(); ++it)
            if (!seen[*it]) stack.push_back(*it);
        }
      }
    }
  }

  bool run() { return place(0, 0); }
  std::int64_t nodes() const { return nodes_; }
  std::vector<Embedding> maps() const {
    std::vector<Embedding> out;
    for (const auto& im : img_) out.emplace_back(std::vector<Vertex>(im.begin() + 1, im.end()));
    return out;
  }

 private:
  char& used(Vertex a, Vertex b) { return used_[static_cast<std::size_t>(a) * (n_ + 1) + b]; }

  bool place(std::size_t s, std::size_t idx) {
    if (s == seq_.size()) return true;
    const std::size_t gi = seq_[s];
    const Graph& g = guests_[gi];
    if (idx == order_[gi].size()) return place(s + 1, 0);
    if (++nodes_ > budget_.max_nodes) throw TimeoutSignal{};
    if ((nodes_ & 4095) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > budget_.seconds) throw TimeoutSignal{};
    }
    const Vertex v = order_[gi][idx];
    auto& im = img_[gi];
    bool tried_untouched = false;
    for (Vertex h = 1; h <= n_; ++h) {
      if (free_[h] < g.degree(v)) continue;
      if (std::find(im.begin() + 1, im.end(), h) != im.end()) continue;
      const bool untouched = free_[h] == n_ - 1;
      if (untouched && tried_untouched) continue;
      bool ok = true;
      for (Vertex w : g.neighbors(v))
        if (im[w] && used(h, im[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (untouched) tried_untouched = true;

      im[v] = h;
      for (Vertex w : g.neighbors(v))
        if (im[w]) {
          used(h, im[w]) = used(im[w], h) = 1;
          --free_[h];
          --free_[im[w]];
        }
      // Every placed neighbour must keep room for its unplaced neighbours.
      bool room = true;
      for (Vertex w : g.neighbors(v)) {
        if (!im[w]) continue;
        int pending = 0;
        for (Vertex x : g.neighbors(w)) pending += im[x] == 0;
        if (free_[im[w]] < pending) room = false;
      }
      int pending_v = 0;
      for (Vertex w : g.neighbors(v)) pending_v += im[w] == 0;
      if (free_[h] < pending_v) room = false;

      if (room && place(s, idx + 1)) return true;

      for (Vertex w : g.neighbors(v))
        if (im[w] && w != v) {
          used(h, im[w]) = used(im[w], h) = 0;
          ++free_[h];
          ++free_[im[w]];
        }
      im[v] = 0;
    }
    return false;
  }

  std::span<const Graph> guests_;
  int n_;
  ExactBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::int64_t nodes_ = 0;
  std::vector<char> used_;
  std::vector<int> free_;
  std::vector<std::size_t> seq_;
  std::vector<std::vector<Vertex>> img_;
  std::vector<std::vector<Vertex>> order_;
};

}  // namespace

ExactResult exact_pack(std::span<const Graph> guests, int host_n, const ExactBudget& budget) {
  ExactResult res;
  std::size_t total = 0;
  for (const Graph& g : guests) {
    if (g.order() > host_n) return res;
    total += g.size();
  }
  if (total > static_cast<std::size_t>(host_n) * (host_n - 1) / 2) return res;
  ExactSearch search(guests, host_n, budget);
  try {
    if (search.run()) {
      res.status = ExactResult::Status::Found;
      res.maps = search.maps();
      const auto vr = verify_packing(guests, res.maps, host_n);
      if (!vr.valid()) throw std::logic_error("exact_pack produced an invalid packing");
    }
  } catch (const TimeoutSignal&) {
    res.status = ExactResult::Status::Timeout;
  }
  res.nodes = search.nodes();
  return res;
}

std::string SuiteReport::summary() const {
  std::ostringstream out;
  out << "total=" << total << " packed=" << packed << " failed=" << failed
      << " timeout=" << timeout;
  return out.str();
}

std::string SuiteReport::text() const {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  out += summary() + "\n";
  return out;
}

namespace {

void check_tuple(SuiteReport& rep, int n, const std::vector<const Tree*>& tuple,
                 const std::vector<std::size_t>& ids, const ExactBudget& budget) {
  std::vector<Graph> guests;
  for (const Tree* t : tuple) guests.push_back(t->graph());
  const auto res = exact_pack(guests, n, budget);
  ++rep.total;
  if (res.status == ExactResult::Status::Found) {
    ++rep.packed;
    return;
  }
  std::string line = "n=" + std::to_string(n) + " classes=";
  for (std::size_t j = 0; j < ids.size(); ++j) line += (j ? "," : "") + std::to_string(ids[j]);
  line += " result=" + to_string(res.status) + " nodes=" + std::to_string(res.nodes) + " trees=";
  for (const Tree* t : tuple) line += canonical_form(*t) + ";";
  rep.lines.push_back(line);
  if (res.status == ExactResult::Status::Timeout)
    ++rep.timeout;
  else
    ++rep.failed;
}

}  // namespace

SuiteReport corollary_suite(int n_min, int n_max, int k, const ExactBudget& budget) {
  if (k < 1) throw std::invalid_argument("corollary_suite: k must be positive");
  SuiteReport rep;
  for (int n = std::max(n_min, k); n <= n_max; ++n) {
    std::vector<std::vector<Tree>> classes;
    for (int j = 0; j < k; ++j) classes.push_back(enumerate_trees(n - j));
    const int before = rep.total, packed_before = rep.packed;
    std::vector<std::size_t> ids(k, 0);
    while (true) {
      std::vector<const Tree*> tuple;
      for (int j = 0; j < k; ++j) tuple.push_back(&classes[j][ids[j]]);
      check_tuple(rep, n, tuple, ids, budget);
      int j = k - 1;
      while (j >= 0 && ++ids[j] == classes[j].size()) ids[j--] = 0;
      if (j < 0) break;
    }
    rep.lines.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) +
                        " tuples=" + std::to_string(rep.total - before) +
                        " packed=" + std::to_string(rep.packed - packed_before));
  }
  return rep;
}

SuiteReport sampled_suite(int n, int k, int samples, std::uint64_t seed,
                          const ExactBudget& budget) {
  SuiteReport rep;
  std::vector<std::vector<Tree>> classes;
  for (int j = 0; j < k; ++j) classes.push_back(enumerate_trees(n - j));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<std::size_t> ids;
    std::vector<const Tree*> tuple;
    for (int j = 0; j < k; ++j) {
      ids.push_back(static_cast<std::size_t>(rng.uniform(0, static_cast<int>(classes[j].size()) - 1)));
      tuple.push_back(&classes[j][ids.back()]);
    }
    check_tuple(rep, n, tuple, ids, budget);
  }
  rep.lines.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) +
                      " sampled=" + std::to_string(samples) + " packed=" + std::to_string(rep.packed));
  return rep;
}

}  // namespace tpack
