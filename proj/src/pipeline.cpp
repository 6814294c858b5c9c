#include "tpack/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "tpack/embed_dense.hpp"
#include "tpack/embed_sparse.hpp"
#include "tpack/errors.hpp"
#include "tpack/oracle.hpp"
#include "tpack/rng.hpp"
#include "tpack/sparse_pair.hpp"

namespace tpack {

void check_instance(const Instance& inst) {
  if (inst.k < 1 || inst.k >= inst.n)
    throw std::invalid_argument("instance needs 1 <= k < n (n=" + std::to_string(inst.n) +
                                " k=" + std::to_string(inst.k) + ")");
  if (static_cast<int>(inst.trees.size()) != inst.k)
    throw std::invalid_argument("instance lists " + std::to_string(inst.trees.size()) +
                                " trees, expected " + std::to_string(inst.k));
  for (int j = 0; j < inst.k; ++j)
    if (inst.trees[j].order() != inst.n - j)
      throw std::invalid_argument("tree " + std::to_string(j) + " has order " +
                                  std::to_string(inst.trees[j].order()) + ", expected " +
                                  std::to_string(inst.n - j));
}

namespace {

struct Prepared {
  std::vector<TreeClass> cls;
  std::vector<ReservedSets> reserved;
};

Prepared prepare(std::span<const Tree> trees, int n, int k, const ConstantsProfile& profile) {
  Prepared p;
  for (int j = 0; j < k; ++j) {
    const Tree& t = trees[j];
    if (!check_hypothesis(t, j, k))
      throw HypothesisViolated(j, "neither " + std::to_string(k - 1 - j) +
                                      " leaves nor a pending path of that order");
    p.cls.push_back(classify(t, n, k, profile));
    p.reserved.push_back(build_reserved(t, j, k, p.cls.back()));
  }
  return p;
}

}  // namespace

Instance generate_instance(int n, int k, Family family, int degree_bound, std::uint64_t seed,
                           const ConstantsProfile& profile) {
  Instance inst;
  inst.n = n;
  inst.k = k;
  if (k < 1 || k >= n) throw std::invalid_argument("generate_instance: need 1 <= k < n");
  for (int j = 0; j < k; ++j) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(j)));
    std::optional<Tree> found;
    for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
      Tree t = random_tree(family, n - j, degree_bound, rng);
      if (!check_hypothesis(t, j, k)) continue;
      try {
        build_reserved(t, j, k, classify(t, n, k, profile));
      } catch (const HypothesisViolated&) {
        continue;
      }
      found = std::move(t);
    }
    if (!found)
      throw std::runtime_error("generate_instance: no conforming tree of order " +
                               std::to_string(n - j));
    inst.trees.push_back(std::move(*found));
  }
  return inst;
}

std::vector<Vertex> select_k_prime(const Graph& f, Vertex v, std::span<const Vertex> z, int size) {
  std::vector<char> blocked(f.order() + 1, 0);
  for (Vertex u : z) blocked[u] = 1;
  blocked[v] = 1;
  for (Vertex u : f.neighbors(v)) blocked[u] = 1;
  std::vector<Vertex> out;
  for (Vertex u = 1; u <= f.order() && static_cast<int>(out.size()) < size; ++u)
    if (!blocked[u]) out.push_back(u);
  if (static_cast<int>(out.size()) < size)
    throw StageFailure("type-iii-kprime", "only " + std::to_string(out.size()) +
                                              " candidates for |K'|=" + std::to_string(size));
  return out;
}

std::string PipelineResult::report_text() const {
  std::string out;
  for (const auto& l : report) out += l + "\n";
  return out;
}

std::string PipelineResult::trace_text() const {
  std::string out;
  for (const auto& l : trace) out += l + "\n";
  return out;
}

namespace {

std::string type_name(TreeType t) { return to_string(t); }

bool contains(std::span<const Vertex> xs, Vertex v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

class Attempt {
 public:
  Attempt(std::span<const Tree> trees, int n, int k, const ConstantsProfile& profile,
          std::uint64_t seed)
      : trees_(trees), n_(n), k_(k), profile_(profile), seed_(seed), union_(n) {}

  std::vector<Embedding> run() {
    prep_ = prepare(trees_, n_, k_, profile_);
    small_packing();
    partition();
    maps_.assign(k_, std::nullopt);

    std::vector<int> type_i, type_ii, type_iii;
    for (int j = k_ - 1; j >= 0; --j) {
      switch (prep_.cls[j].type) {
        case TreeType::I: type_i.push_back(j); break;
        case TreeType::II: type_ii.push_back(j); break;
        case TreeType::III: type_iii.push_back(j); break;
      }
    }
    for (std::size_t i = 0; i < type_ii.size(); ++i) {
      std::vector<Vertex> later;
      for (std::size_t t = i + 1; t < type_ii.size(); ++t) later.push_back(center_image(type_ii[t]));
      embed_pinned(type_ii[i], later, true);
    }
    for (int j : type_i) embed_pinned(j, {}, false);
    for (std::size_t i = 0; i < type_iii.size(); ++i)
      embed_star_like(type_iii[i], std::span<const int>(type_iii).subspan(i));

    std::vector<Embedding> out;
    for (auto& m : maps_) out.push_back(std::move(*m));
    const auto vr = verify_packing(trees_, out, n_);
    if (!vr.valid()) throw std::logic_error("pipeline: final verification failed: " + vr.message);
    report_.push_back("verify=valid");
    return out;
  }

  std::vector<std::string> report_;
  std::vector<std::string> trace_;

 private:
  Vertex label(Vertex block_index) const { return n_ - k_ + block_index; }
  Vertex h(int j, Vertex guest) const {
    const int local = prep_.reserved[j].local_of(guest);
    return label(sp_.h[j](local));
  }
  Vertex center_image(int j) const { return label(sp_.star_centers.at(j)); }

  void small_packing() {
    for (int j = 0; j < k_; ++j) {
      small_.push_back(small_tree_from(prep_.reserved[j], trees_[j], prep_.cls[j].type));
      const auto& rs = prep_.reserved[j];
      report_.push_back("tree j=" + std::to_string(j) + " type=" + type_name(prep_.cls[j].type) +
                        " max_degree=" + std::to_string(trees_[j].graph().max_degree()) +
                        " shape=" + (rs.shape == CompletionShape::Path ? "path" : "star") +
                        " reserved=" + std::to_string(rs.size()) +
                        " avoid=" + std::to_string(small_.back().avoid_centers.size()));
    }
    sp_ = pack_small(small_);
    if (auto bad = check_small_packing(small_, sp_))
      throw std::logic_error("pipeline: small packing check failed: " + *bad);
    for (int j = 0; j < k_; ++j) {
      std::string line = "small j=" + std::to_string(j) + " h:";
      for (Vertex r = 1; r <= small_[j].order(); ++r)
        line += " " + std::to_string(prep_.reserved[j].reserved[r - 1]) + "->" +
                std::to_string(label(sp_.h[j](r)));
      trace_.push_back(line);
    }
    report_.push_back("small_nodes=" + std::to_string(sp_.nodes));
  }

  void partition() {
    for (int c = 1; c <= k_; ++c) part_.k_block.push_back(label(c));
    for (int j = 0; j < k_; ++j) {
      if (prep_.cls[j].type == TreeType::II) part_.y.push_back(center_image(j));
      if (prep_.cls[j].type == TreeType::III) part_.z.push_back(center_image(j));
    }
    std::sort(part_.y.begin(), part_.y.end());
    std::sort(part_.z.begin(), part_.z.end());
    for (Vertex v : part_.k_block)
      if (!contains(part_.y, v)) part_.x.push_back(v);
    for (Vertex v : part_.z)
      if (!contains(part_.x, v)) throw std::logic_error("pipeline: Z not inside X");
    part_.x_of.resize(k_);
    part_.y_of.resize(k_);
    part_.z_of.resize(k_);
    for (int j = 0; j < k_; ++j)
      for (Vertex g : prep_.reserved[j].reserved) {
        const Vertex img = h(j, g);
        (contains(part_.x, img) ? part_.x_of : part_.y_of)[j].push_back(g);
        if (contains(part_.z, img)) part_.z_of[j].push_back(g);
      }
    auto join = [](const std::vector<Vertex>& xs) {
      std::string s;
      for (Vertex v : xs) s += (s.empty() ? "" : ",") + std::to_string(v);
      return s.empty() ? std::string("-") : s;
    };
    report_.push_back("partition X=" + join(part_.x) + " Y=" + join(part_.y) +
                      " Z=" + join(part_.z));
  }

  void add_image(int j, const Embedding& f) {
    for (const Edge& e : trees_[j].graph().edges())
      if (!union_.add_edge(f(e.u), f(e.v)))
        throw std::logic_error("pipeline: tree " + std::to_string(j) + " reuses host edge " +
                               to_string(Edge(f(e.u), f(e.v))));
    maps_[j] = f;
  }

  void add_trace(int j, const StageTrace& st) {
    for (const auto& l : st.lines) trace_.push_back("j=" + std::to_string(j) + " " + l);
  }

  /// Type I (sparse) or type II (dense) step on G[(V \ X) u h(X_j)] minus `exclude`.
  void embed_pinned(int j, const std::vector<Vertex>& exclude, bool dense) {
    const auto& xj = part_.x_of[j];
    std::vector<Vertex> pinned_hosts;
    for (Vertex g : xj) pinned_hosts.push_back(h(j, g));
    std::vector<Vertex> verts;
    for (Vertex v = 1; v <= n_; ++v) {
      if (contains(part_.x, v) && !contains(pinned_hosts, v)) continue;
      if (contains(exclude, v)) continue;
      verts.push_back(v);
    }
    const Graph whole = union_.build();
    const InducedSubgraph sub = induced_subgraph(whole, verts);
    std::vector<Vertex> local(n_ + 1, 0);
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
      local[sub.to_parent[i]] = static_cast<Vertex>(i + 1);

    PinConstraint pin;
    for (std::size_t i = 0; i < xj.size(); ++i) {
      pin.host.push_back(local[pinned_hosts[i]]);
      pin.guest.push_back(xj[i]);
    }
    const int host_delta = sub.graph.max_degree();
    const double budget = profile_.degree_budget(n_);
    report_.push_back("delta_check j=" + std::to_string(j) +
                      " host_max_degree=" + std::to_string(host_delta) +
                      " budget=" + std::to_string(budget) +
                      " within=" + (host_delta <= budget ? "yes" : "no"));

    const std::uint64_t s = mix_seed(seed_, static_cast<std::uint64_t>(j));
    EmbedResult res =
        dense ? pack_high_max_degree(sub.graph, trees_[j], pin, k_, profile_, s,
                                     local[center_image(j)], budget)
              : pack_low_max_degree(sub.graph, trees_[j], pin, k_, profile_, s, budget);
    add_trace(j, res.trace);
    for (const auto& issue : res.pin_issues)
      report_.push_back("pin_issue j=" + std::to_string(j) + " " + issue);

    std::vector<Vertex> images;
    for (Vertex v = 1; v <= trees_[j].order(); ++v) images.push_back(sub.to_parent[res.f(v) - 1]);
    const Embedding f(std::move(images));
    for (Vertex v = 1; v <= trees_[j].order(); ++v)
      if (contains(part_.x, f(v)) != contains(xj, v))
        throw std::logic_error("pipeline: preimage of X differs from X_j for tree " +
                               std::to_string(j));
    add_image(j, f);
    report_.push_back("embedded j=" + std::to_string(j) + " stage=" + (dense ? "dense" : "sparse") +
                      " union_max_degree=" + std::to_string(res.union_max_degree) +
                      " resamples=" + std::to_string(res.trace.resamples));
  }

  /// Type III step: pin Z_j, then pack the rest with F[K'].
  void embed_star_like(int j, std::span<const int> remaining_iii) {
    const Tree& t = trees_[j];
    const auto& zj = part_.z_of[j];
    const Vertex vi = center_image(j);
    const int alpha = static_cast<int>(zj.size()) - 1;
    const Graph f_prev = union_.build();

    GraphBuilder hstar(n_);
    for (int t2 = 0; t2 < k_; ++t2) {
      if (std::find(remaining_iii.begin(), remaining_iii.end(), t2) != remaining_iii.end()) continue;
      for (const Edge& e : small_[t2].completion.graph().edges())
        hstar.add_edge(label(sp_.h[t2](e.u)), label(sp_.h[t2](e.v)));
    }
    const int d_f = f_prev.degree(vi);
    const int d_h = hstar.build().degree(vi);
    report_.push_back("degree_domination j=" + std::to_string(j) + " d_F=" + std::to_string(d_f) +
                      " d_H=" + std::to_string(d_h) + " ok=" + (d_f <= d_h ? "yes" : "no"));
    if (d_f > d_h)
      throw StageFailure("type-iii-domination", "d_F(v)=" + std::to_string(d_f) +
                                                    " > d_H*(v)=" + std::to_string(d_h));

    const int size = n_ - 1 - j - alpha;
    const auto kp = select_k_prime(f_prev, vi, part_.z, size);
    report_.push_back("k_prime j=" + std::to_string(j) + " size=" + std::to_string(size) +
                      " alpha=" + std::to_string(alpha));

    std::vector<Vertex> rest;
    for (Vertex v = 1; v <= t.order(); ++v)
      if (!contains(zj, v)) rest.push_back(v);
    const InducedSubgraph s_prime = induced_subgraph(t.graph(), rest);
    const InducedSubgraph g_prime = induced_subgraph(f_prev, kp);
    const int np = s_prime.graph.order();
    const bool sparse_ok = s_prime.graph.size() <= 0.4 * np;
    const bool brandt = np > 0 && brandt_precondition(s_prime.graph, g_prime.graph, 0.4);
    report_.push_back("brandt j=" + std::to_string(j) + " n'=" + std::to_string(np) +
                      " edges_S'=" + std::to_string(s_prime.graph.size()) +
                      " edges_G'=" + std::to_string(g_prime.graph.size()) +
                      " sparse=" + (sparse_ok ? "yes" : "no") +
                      " precondition=" + (brandt ? "yes" : "no"));
    if (profile_.is_faithful() && (!sparse_ok || !brandt))
      throw StageFailure("type-iii-brandt", "pair precondition fails for tree " + std::to_string(j));

    const auto sigma =
        pack_sparse_pair(s_prime.graph, g_prime.graph, mix_seed(seed_, 0x300 + static_cast<std::uint64_t>(j)));
    if (!sigma) throw StageFailure("type-iii-pair", "no packing of S' with F[K'] found");

    std::vector<Vertex> images(t.order() + 1, 0);
    for (Vertex g : zj) images[g] = h(j, g);
    for (int a = 1; a <= np; ++a)
      images[s_prime.to_parent[a - 1]] = g_prime.to_parent[(*sigma)(a) - 1];
    const Embedding f(std::vector<Vertex>(images.begin() + 1, images.end()));
    for (Vertex v = 1; v <= t.order(); ++v)
      if (contains(part_.z, f(v)) != contains(zj, v))
        throw std::logic_error("pipeline: preimage of Z differs from Z_j for tree " +
                               std::to_string(j));
    add_image(j, f);
    trace_.push_back("j=" + std::to_string(j) + " star-like center=" + std::to_string(vi) +
                     " kprime=" + std::to_string(kp.size()));
  }

  std::span<const Tree> trees_;
  int n_, k_;
  const ConstantsProfile& profile_;
  std::uint64_t seed_;
  Prepared prep_;
  std::vector<SmallTree> small_;
  SmallPacking sp_;
  PartitionXYZ part_;
  GraphBuilder union_;
  std::vector<std::optional<Embedding>> maps_;
};

std::string types_summary(const Prepared& p) {
  int a = 0, b = 0, c = 0;
  for (const auto& cl : p.cls) {
    a += cl.type == TreeType::I;
    b += cl.type == TreeType::II;
    c += cl.type == TreeType::III;
  }
  return "types I=" + std::to_string(a) + " II=" + std::to_string(b) + " III=" + std::to_string(c);
}

}  // namespace

PipelineResult pack_consecutive_trees(const Instance& inst, const ConstantsProfile& profile,
                                      std::uint64_t seed) {
  check_instance(inst);
  if (inst.k > profile.small_pack_max_k)
    throw std::invalid_argument("k exceeds small_pack_max_k");
  const Prepared pre = prepare(inst.trees, inst.n, inst.k, profile);

  PipelineResult res;
  res.report.push_back("n=" + std::to_string(inst.n) + " k=" + std::to_string(inst.k) +
                       " seed=" + std::to_string(seed) + " profile=" + to_string(profile.preset));
  res.report.push_back(types_summary(pre));
  int attempt = 0;

  auto try_attempt = [&](std::span<const Tree> trees, std::uint64_t s, int level,
                         const std::vector<std::vector<Vertex>>* perms) -> bool {
    res.trace.push_back("attempt=" + std::to_string(attempt) + " level=" + std::to_string(level) +
                        " seed=" + std::to_string(s));
    Attempt a(trees, inst.n, inst.k, profile, s);
    try {
      std::vector<Embedding> maps = a.run();
      for (auto& l : a.trace_) res.trace.push_back(std::move(l));
      if (perms) {
        for (int j = 0; j < inst.k; ++j) {
          std::vector<Vertex> back;
          for (Vertex v = 1; v <= inst.trees[j].order(); ++v) back.push_back(maps[j]((*perms)[j][v - 1]));
          maps[j] = Embedding(std::move(back));
        }
      }
      for (auto& l : a.report_) res.report.push_back(std::move(l));
      res.maps = std::move(maps);
      res.success = true;
      res.fallback_level = level;
      res.retries = attempt;
      return true;
    } catch (const PackingError& e) {
      for (auto& l : a.trace_) res.trace.push_back(std::move(l));
      res.trace.push_back("attempt=" + std::to_string(attempt) + " failed: " + e.what());
      res.report.push_back("stage_error attempt=" + std::to_string(attempt) +
                           " level=" + std::to_string(level) + " error=" + e.what());
      ++attempt;
      return false;
    }
  };

  bool done = try_attempt(inst.trees, seed, 0, nullptr);
  for (int t = 1; t <= profile.retries && !done; ++t)
    done = try_attempt(inst.trees, mix_seed(seed, static_cast<std::uint64_t>(t)), 1, nullptr);
  for (int t = 1; t <= profile.restarts && !done; ++t) {
    Rng rng(mix_seed(seed, 0x1000 + static_cast<std::uint64_t>(t)));
    std::vector<std::vector<Vertex>> perms;
    std::vector<Tree> relabelled;
    for (const Tree& tree : inst.trees) {
      std::vector<Vertex> perm(tree.order());
      std::iota(perm.begin(), perm.end(), 1);
      rng.shuffle(std::span<Vertex>(perm));
      relabelled.push_back(relabel(tree, perm));
      perms.push_back(std::move(perm));
    }
    done = try_attempt(relabelled, mix_seed(seed, 0x2000 + static_cast<std::uint64_t>(t)), 2, &perms);
  }
  if (!done && inst.n <= profile.oracle_max_n) {
    std::vector<Graph> guests;
    for (const Tree& t : inst.trees) guests.push_back(t.graph());
    const auto ex = exact_pack(guests, inst.n, ExactBudget{50'000'000, 60.0});
    res.trace.push_back("attempt=" + std::to_string(attempt) + " level=3 exact=" + to_string(ex.status) +
                        " nodes=" + std::to_string(ex.nodes));
    res.report.push_back("exact status=" + to_string(ex.status) + " nodes=" + std::to_string(ex.nodes));
    if (ex.status == ExactResult::Status::Found) {
      res.maps = ex.maps;
      res.success = true;
      res.fallback_level = 3;
      res.retries = attempt;
      done = true;
    } else {
      ++attempt;
    }
  }
  if (!done) {
    res.fallback_level = 4;
    res.retries = attempt;
  }
  if (res.success) {
    const auto vr = verify_packing(inst.trees, res.maps, inst.n);
    if (!vr.valid()) throw std::logic_error("pipeline: result fails verification: " + vr.message);
  }
  res.report.insert(res.report.begin(),
                    {std::string("outcome=") + (res.success ? "success" : "fail"),
                     "fallback_level=" + std::to_string(res.fallback_level),
                     "retries=" + std::to_string(res.retries)});
  return res;
}

}  // namespace tpack
