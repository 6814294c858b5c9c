#include "tpack/embed_dense.hpp"

#include <algorithm>
#include <cmath>

#include "tpack/errors.hpp"

namespace tpack {

std::vector<Vertex> select_p_prime(const Graph& forest, Vertex hub, double q) {
  std::vector<Vertex> out;
  for (Vertex v : forest.neighbors(hub)) {
    if (forest.degree(v) > q) continue;
    bool ok = true;
    for (Vertex w : forest.neighbors(v))
      if (w != hub && forest.degree(w) > q) ok = false;
    if (ok) out.push_back(v);
  }
  return out;
}

StageSets sample_dense_stage_sets(const Graph& h_prime, const SortedVertexOrder& order, int n,
                                  const ConstantsProfile& profile, std::uint64_t seed,
                                  int horizon, bool strict) {
  const double cap = profile.independent_degree_cap(n);
  const double p = profile.dense_probability(n);
  const double c_bound = profile.c_prime_bound(n);
  const double d_bound = profile.d_prime_bound(n);

  std::vector<char> base(h_prime.order() + 1, 0);
  for (Vertex w : order.vertices()) base[w] = h_prime.degree(w) < cap;
  std::vector<std::vector<Vertex>> a(order.size());
  for (int i = 1; i <= order.size(); ++i) {
    const Vertex wi = order.at(i);
    std::vector<char> allowed = base;
    allowed[wi] = 0;
    for (Vertex w : h_prime.neighbors(wi)) allowed[w] = 0;
    a[i - 1] = forest_max_independent_set(h_prime, allowed);
  }

  std::string condition;
  int worst = 0;
  const int attempts = std::max(1, profile.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    StageSets s = draw_stage_sets(h_prime, order, a, p, rng);
    s.resamples = attempt;
    condition.clear();
    for (int i = 1; i <= order.size() && condition.empty(); ++i) {
      if (s.c[i - 1].size() > c_bound) {
        worst = i;
        condition = "|C'_i| > " + std::to_string(c_bound);
      }
    }
    for (int i = 1; i <= std::min(horizon, order.size()) && condition.empty(); ++i) {
      if (s.d[i - 1].size() < d_bound) {
        worst = i;
        condition = "|D'_i| < " + std::to_string(d_bound);
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

EmbedResult pack_high_max_degree(const Graph& g, const Tree& t, const PinConstraint& pin, int k,
                                 const ConstantsProfile& profile, std::uint64_t seed,
                                 Vertex preferred_isolated, double degree_budget) {
  const int n = g.order();
  if (t.order() > n) throw std::invalid_argument("pack_high_max_degree: tree larger than host");
  EmbedResult res;
  StageTrace& trace = res.trace;
  res.pin_issues = check_pin(g, t.graph(), pin, k);
  if (profile.is_faithful() && !res.pin_issues.empty())
    throw StageFailure("dense-pin", res.pin_issues.front());
  for (const auto& issue : res.pin_issues) trace.add("dense pin-cap " + issue);

  const Graph guest = pad_guest(t.graph(), n);
  const auto order = sorted_vertices(g);
  const auto guest_order = sorted_vertices(guest);
  const Vertex hub = guest_order.at(1);

  MatchState st(g, guest);
  // Stage 1: pins, then an isolated host vertex for the hub.
  std::vector<char> near_pin_host(n + 1, 0), near_pin_guest(n + 1, 0), p_second(n + 1, 0);
  for (std::size_t i = 0; i < pin.size(); ++i) {
    if (pin.guest[i] == hub)
      throw StageFailure("dense-stage1", "maximum-degree vertex is pinned");
    st.match(pin.host[i], pin.guest[i]);
    near_pin_host[pin.host[i]] = 1;
    for (Vertex w : g.neighbors(pin.host[i])) near_pin_host[w] = 1;
    near_pin_guest[pin.guest[i]] = 1;
    p_second[pin.guest[i]] = 1;
    for (Vertex w : guest.neighbors(pin.guest[i])) near_pin_guest[w] = 1;
  }
  Vertex iso = 0;
  if (preferred_isolated && g.contains(preferred_isolated) &&
      !st.host_matched(preferred_isolated) && g.degree(preferred_isolated) == 0)
    iso = preferred_isolated;
  for (int i = n; i >= 1 && !iso; --i) {
    const Vertex v = order.at(i);
    if (g.degree(v) > 0) break;
    if (!st.host_matched(v)) iso = v;
  }
  if (!iso) throw StageFailure("dense-stage1", "host has no unmatched isolated vertex");
  st.match(iso, hub);
  trace.add("dense stage1 hub=" + std::to_string(hub) + " host=" + std::to_string(iso));

  const double q = profile.q(n, k);
  const auto p_prime = select_p_prime(guest, hub, q);
  std::vector<Vertex> avail;
  for (Vertex v : p_prime)
    if (!near_pin_guest[v]) avail.push_back(v);
  std::stable_sort(avail.begin(), avail.end(),
                   [&](Vertex a, Vertex b) { return guest.degree(a) < guest.degree(b); });
  for (Vertex v : p_prime)
    for (Vertex w : guest.neighbors(v))
      if (w != hub) p_second[w] = 1;

  const double cutoff = profile.dense_high_degree_cutoff(n, k);
  int z = 0;
  while (z < n && g.degree(order.at(z + 1)) >= cutoff) ++z;
  trace.add("dense z=" + std::to_string(z) + " p-prime=" + std::to_string(p_prime.size()) +
            " q=" + std::to_string(q));
  if (profile.is_faithful()) {
    if (p_prime.size() <= (2.0 * k + 1) * std::pow(static_cast<double>(n), 0.75))
      throw InsufficientPPrime("|P'|=" + std::to_string(p_prime.size()));
    if (z > 2.0 * k * std::pow(static_cast<double>(n), 0.75))
      throw std::logic_error("high-degree count exceeds the degree-rank bound");
  } else if (p_prime.size() < static_cast<std::size_t>(z) + pin.size()) {
    throw InsufficientPPrime("|P'|=" + std::to_string(p_prime.size()) +
                             " < z+|I'|=" + std::to_string(z + pin.size()));
  }

  // Stage 2: high-degree host vertices onto P', their other guest neighbours
  // into A_i \ N_G[I].
  const double a_cap = profile.candidate_degree_cap(n, k);
  std::vector<Vertex> stage2_images;
  for (int i = 1; i <= z; ++i) {
    const Vertex vi = order.at(i);
    if (st.host_matched(vi)) {
      trace.add("dense stage2 i=" + std::to_string(i) + " already-matched");
      continue;
    }
    Vertex target = 0;
    for (Vertex v : avail)
      if (st.can_match(vi, v)) {
        target = v;
        break;
      }
    if (!target) throw StageFailure("dense-stage2", "P' exhausted at v_" + std::to_string(i));
    st.match(vi, target);
    stage2_images.push_back(target);
    std::string repairs;
    for (Vertex r : guest.neighbors(target)) {
      if (r == hub || st.guest_matched(r)) continue;
      Vertex chosen = 0;
      for (Vertex u = 1; u <= n && !chosen; ++u) {
        if (u == vi || g.adjacent(u, vi) || g.degree(u) >= a_cap || near_pin_host[u]) continue;
        if (st.can_match(u, r)) chosen = u;
      }
      if (!chosen)
        throw StageFailure("dense-stage2", "A_" + std::to_string(i) +
                                               " has no vertex for guest " + std::to_string(r));
      st.match(chosen, r);
      repairs += " " + std::to_string(r) + "<-" + std::to_string(chosen);
    }
    trace.add("dense stage2 i=" + std::to_string(i) + " host=" + std::to_string(vi) +
              " guest=" + std::to_string(target) + " repair:" + repairs);
  }
  for (std::size_t a = 0; a < stage2_images.size(); ++a) {
    if (guest.degree(stage2_images[a]) > q) throw std::logic_error("stage-2 image above q");
    for (std::size_t b = a + 1; b < stage2_images.size(); ++b)
      if (guest.adjacent(stage2_images[a], stage2_images[b]))
        throw std::logic_error("stage-2 images adjacent");
  }

  // Residual guest forest H' and its order.
  std::vector<Edge> residual;
  for (const Edge& e : guest.edges())
    if (!st.guest_matched(e.u) && !st.guest_matched(e.v)) residual.push_back(e);
  const Graph h_prime(n, residual);
  std::vector<Vertex> w_order;
  for (Vertex v : guest_order.vertices())
    if (!st.guest_matched(v)) w_order.push_back(v);
  std::stable_sort(w_order.begin(), w_order.end(), [&](Vertex a, Vertex b) {
    return h_prime.degree(a) > h_prime.degree(b) || (h_prime.degree(a) == h_prime.degree(b) && a < b);
  });
  const SortedVertexOrder w(w_order);
  const double hub_cutoff = profile.hub_cutoff(n);
  int y = 0;
  while (y < w.size() && h_prime.degree(w.at(y + 1)) >= hub_cutoff) ++y;
  trace.add("dense y=" + std::to_string(y) + " r=" + std::to_string(w.size()));
  if (profile.is_faithful() && y > std::sqrt(static_cast<double>(n)) / 180.0)
    throw std::logic_error("hub count exceeds the degree-rank bound");

  const StageSets sets =
      sample_dense_stage_sets(h_prime, w, n, profile, mix_seed(seed, 0x5e7), y,
                              profile.is_faithful());
  trace.resamples += sets.resamples;
  trace.add("dense resamples=" + std::to_string(sets.resamples));
  if (!sets.shortfall.empty()) trace.add("dense shortfall " + sets.shortfall);

  // Stage 3: guest hubs onto host vertices of degree <= 4k, their host
  // neighbours repaired into D'_i.
  const double low_cap = profile.low_degree_cap(k);
  std::vector<Vertex> low_hosts;
  for (Vertex u = 1; u <= n; ++u)
    if (g.degree(u) <= low_cap) low_hosts.push_back(u);
  std::stable_sort(low_hosts.begin(), low_hosts.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  for (int i = 1; i <= y; ++i) {
    const Vertex wi = w.at(i);
    if (st.guest_matched(wi)) throw std::logic_error("stage-3 hub already matched");
    Vertex u = 0;
    for (Vertex cand : low_hosts)
      if (st.can_match(cand, wi)) {
        u = cand;
        break;
      }
    if (!u) throw StageFailure("dense-stage3", "no low-degree host for w'_" + std::to_string(i));
    st.match(u, wi);
    std::string repairs;
    for (Vertex v : g.neighbors(u)) {
      if (st.host_matched(v)) continue;
      std::vector<char> blocked(n + 1, 0);
      for (Vertex x : g.neighbors(v))
        if (st.host_matched(x) && p_second[st.image(x)])
          for (Vertex b : guest.neighbors(st.image(x))) blocked[b] = 1;
      auto pick = [&](const std::vector<Vertex>& from) -> Vertex {
        for (Vertex d : from)
          if (!blocked[d] && st.can_match(v, d)) return d;
        return 0;
      };
      Vertex chosen = pick(sets.d[i - 1]);
      if (!chosen && !profile.is_faithful()) {
        chosen = pick(sets.a[i - 1]);
        if (chosen) repairs += " (wide)";
      }
      if (!chosen)
        throw StageFailure("dense-stage3", "D'_" + std::to_string(i) +
                                               " has no vertex for host " + std::to_string(v));
      st.match(v, chosen);
      repairs += " " + std::to_string(v) + "->" + std::to_string(chosen);
    }
    trace.add("dense stage3 i=" + std::to_string(i) + " guest=" + std::to_string(wi) +
              " host=" + std::to_string(u) + " repair:" + repairs);
  }

  complete_by_independent_set(st, guest_order, "dense-stage4", "dense-stage5", trace);
  const double budget = degree_budget > 0 ? degree_budget : profile.degree_budget(n);
  res.f = finish_embedding(st, t.graph(), pin, budget, res.union_max_degree,
                           trace);
  return res;
}

}  // namespace tpack
