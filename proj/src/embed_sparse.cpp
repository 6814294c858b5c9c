#include "tpack/embed_sparse.hpp"

#include <algorithm>
#include <cmath>

#include "tpack/errors.hpp"

namespace tpack {

std::vector<std::vector<Vertex>> candidate_sets(const Graph& g, const SortedVertexOrder& order,
                                                double a_cap) {
  std::vector<Vertex> low;
  for (Vertex u = 1; u <= g.order(); ++u)
    if (g.degree(u) < a_cap) low.push_back(u);
  std::vector<std::vector<Vertex>> a(order.size());
  for (int i = 1; i <= order.size(); ++i) {
    const Vertex vi = order.at(i);
    for (Vertex u : low)
      if (u != vi && !g.adjacent(u, vi)) a[i - 1].push_back(u);
  }
  return a;
}

StageSets draw_stage_sets(const Graph& g, const SortedVertexOrder& order,
                          std::vector<std::vector<Vertex>> a, double p, Rng& rng) {
  const int ranks = order.size();
  StageSets s;
  s.p = p;
  s.a = std::move(a);
  s.b.resize(ranks);
  s.c.resize(ranks);
  s.d.resize(ranks);
  std::vector<char> in_union(g.order() + 1, 0);
  std::vector<char> covered(g.order() + 1, 0);
  for (int i = 1; i <= ranks; ++i) {
    auto& b = s.b[i - 1];
    for (Vertex u : s.a[i - 1])
      if (rng.bernoulli(p)) b.push_back(u);
    for (Vertex w : g.neighbors(order.at(i)))
      if (in_union[w]) s.c[i - 1].push_back(w);
    for (Vertex u : b)
      if (!covered[u]) s.d[i - 1].push_back(u);
    for (Vertex u : b) {
      in_union[u] = 1;
      covered[u] = 1;
      for (Vertex w : g.neighbors(u)) covered[w] = 1;
    }
  }
  return s;
}

StageSets sample_stage_sets(const Graph& g, const SortedVertexOrder& order, int k,
                            const ConstantsProfile& profile, std::uint64_t seed, int horizon,
                            bool strict) {
  const int n = g.order();
  const double p = profile.sample_probability(n, k);
  const double c_bound = profile.c_bound(n, k);
  const double d_bound = profile.d_bound(n, k);
  const auto a = candidate_sets(g, order, profile.candidate_degree_cap(n, k));
  std::string condition;
  int worst = 0;
  const int attempts = std::max(1, profile.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    StageSets s = draw_stage_sets(g, order, a, p, rng);
    s.resamples = attempt;
    condition.clear();
    std::size_t worst_c = 0;
    for (int i = 1; i <= order.size(); ++i) {
      if (s.c[i - 1].size() > c_bound && s.c[i - 1].size() > worst_c) {
        worst_c = s.c[i - 1].size();
        worst = i;
        condition = "|C_i| > " + std::to_string(c_bound);
      }
    }
    if (condition.empty()) {
      for (int i = 1; i <= std::min(horizon, order.size()); ++i) {
        if (s.d[i - 1].size() < d_bound) {
          worst = i;
          condition = "|D_i| < " + std::to_string(d_bound);
          break;
        }
      }
    }
    if (condition.empty()) return s;
    if (!strict && attempt + 1 == attempts) {
      s.shortfall = condition + " (i=" + std::to_string(worst) + ")";
      return s;
    }
  }
  throw ResampleExhausted(condition, worst);
}

EmbedResult pack_low_max_degree(const Graph& g, const Tree& t, const PinConstraint& pin, int k,
                                const ConstantsProfile& profile, std::uint64_t seed,
                                double degree_budget) {
  const int n = g.order();
  if (t.order() > n) throw std::invalid_argument("pack_low_max_degree: tree larger than host");
  EmbedResult res;
  StageTrace& trace = res.trace;
  res.pin_issues = check_pin(g, t.graph(), pin, k);
  if (profile.is_faithful() && !res.pin_issues.empty())
    throw StageFailure("sparse-pin", res.pin_issues.front());
  for (const auto& issue : res.pin_issues) trace.add("sparse pin-cap " + issue);

  const Graph guest = pad_guest(t.graph(), n);
  const auto order = sorted_vertices(g);
  const auto guest_order = sorted_vertices(guest);

  const double cutoff = profile.high_degree_cutoff(n, k);
  int x = 0;
  while (x < n && g.degree(order.at(x + 1)) >= cutoff) ++x;
  trace.add("sparse x=" + std::to_string(x) + " cutoff=" + std::to_string(cutoff));
  if (profile.is_faithful() &&
      x > 540.0 * k * (2 * k + 1) * std::pow(static_cast<double>(n), 0.75))
    throw std::logic_error("high-degree count exceeds the degree-rank bound");
  if (x > profile.stage2_cap(n, k)) trace.add("sparse x-exceeds-cap");

  const int horizon = profile.d_horizon(n, k, x);
  const StageSets sets =
      sample_stage_sets(g, order, k, profile, seed, horizon, profile.is_faithful());
  trace.resamples += sets.resamples;
  trace.add("sparse resamples=" + std::to_string(sets.resamples));
  if (!sets.shortfall.empty()) trace.add("sparse shortfall " + sets.shortfall);

  MatchState st(g, guest);
  // Stage 1: pinned vertices.
  std::vector<char> near_pin(n + 1, 0);
  for (std::size_t i = 0; i < pin.size(); ++i) {
    st.match(pin.host[i], pin.guest[i]);
    near_pin[pin.host[i]] = 1;
    for (Vertex w : g.neighbors(pin.host[i])) near_pin[w] = 1;
  }
  std::vector<char> high(n + 1, 0);
  for (int i = 1; i <= x; ++i) high[order.at(i)] = 1;

  // Stage 2: high-degree host vertices onto guest vertices of degree <= 3,
  // with the unmatched guest neighbours repaired into D_i.
  std::vector<Vertex> low_guests;
  for (Vertex g2 = 1; g2 <= n; ++g2)
    if (guest.degree(g2) <= 3) low_guests.push_back(g2);
  std::stable_sort(low_guests.begin(), low_guests.end(),
                   [&](Vertex a, Vertex b) { return guest.degree(a) < guest.degree(b); });
  std::vector<Vertex> stage2_images;
  for (int i = 1; i <= x; ++i) {
    const Vertex vi = order.at(i);
    if (st.host_matched(vi)) {
      trace.add("sparse stage2 i=" + std::to_string(i) + " pinned");
      continue;
    }
    Vertex c = 0;
    for (Vertex g2 : low_guests) {
      if (st.can_match(vi, g2)) {
        c = g2;
        break;
      }
    }
    if (!c)
      throw StageFailure("sparse-stage2", "no guest vertex of degree <= 3 for v_" +
                                              std::to_string(i));
    st.match(vi, c);
    stage2_images.push_back(c);
    std::string repairs;
    for (Vertex r : guest.neighbors(c)) {
      if (st.guest_matched(r)) continue;
      auto pick = [&](const std::vector<Vertex>& from) -> Vertex {
        for (Vertex u : from)
          if (!near_pin[u] && !high[u] && st.can_match(u, r)) return u;
        return 0;
      };
      Vertex chosen = pick(sets.d[i - 1]);
      if (!chosen && !profile.is_faithful()) {
        chosen = pick(sets.a[i - 1]);
        if (chosen) repairs += " (wide)";
      }
      if (!chosen)
        throw StageFailure("sparse-stage2", "D_" + std::to_string(i) +
                                                " has no vertex for guest " + std::to_string(r));
      st.match(chosen, r);
      repairs += " " + std::to_string(r) + "<-" + std::to_string(chosen);
    }
    trace.add("sparse stage2 i=" + std::to_string(i) + " host=" + std::to_string(vi) +
              " guest=" + std::to_string(c) + " repair:" + repairs);
  }
  // Every guest neighbour of a stage-2 image is matched.
  for (Vertex c : stage2_images)
    for (Vertex r : guest.neighbors(c))
      if (!st.guest_matched(r)) throw std::logic_error("stage-2 neighbour left unmatched");

  complete_by_independent_set(st, guest_order, "sparse-stage3", "sparse-stage4", trace);
  const double budget = degree_budget > 0 ? degree_budget : profile.degree_budget(n);
  res.f = finish_embedding(st, t.graph(), pin, budget, res.union_max_degree,
                           trace);
  return res;
}

}  // namespace tpack
