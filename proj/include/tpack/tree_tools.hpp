#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpack/graph.hpp"
#include "tpack/profile.hpp"
#include "tpack/rng.hpp"

namespace tpack {

// --- Prüfer codes -----------------------------------------------------------

/// Throws GraphError on a bad length or label.
Tree decode_prufer(std::span<const Vertex> seq, int n);
std::vector<Vertex> encode_prufer(const Tree& t);

// --- Pending paths ----------------------------------------------------------

/// A cut edge e such that one component of T - e is a path whose vertices all
/// have degree <= 2 in T.
struct PendingPath {
  Edge cut_edge;
  /// path.front() is incident to the cut edge; path.back() is a leaf of T.
  std::vector<Vertex> path;
};

/// Pending path of order exactly t, choosing the smallest cut edge. Requires
/// 1 <= t < |V(T)|.
std::optional<PendingPath> find_pending_path(const Tree& t, int order);

/// Independent re-check of a witness against the definition.
bool is_pending_path(const Tree& t, const PendingPath& p);

// --- Hypothesis & classification ---------------------------------------------

struct HypothesisWitness {
  enum class Branch { Trivial, PendingPath, Leaves };
  /// Default branch: pending path when one exists, else leaves.
  Branch branch = Branch::Trivial;
  /// Required size k-1-j.
  int required = 0;
  /// A_j for the default branch.
  std::vector<Vertex> a;
  std::optional<PendingPath> pending;
  /// Lexicographically smallest `required` leaves, when the tree has that many.
  std::optional<std::vector<Vertex>> leaves;
};

std::string to_string(HypothesisWitness::Branch b);

/// Satisfied iff T has k-1-j leaves or a pending path of order k-1-j.
std::optional<HypothesisWitness> check_hypothesis(const Tree& t, int j, int k);

enum class TreeType { I, II, III };
std::string to_string(TreeType t);

struct TreeClass {
  TreeType type = TreeType::I;
  double delta_I = 0;
  double delta_III = 0;
};

TreeClass classify(const Tree& t, int n, int k, const ConstantsProfile& profile);

// --- Reserved sets ------------------------------------------------------------

enum class CompletionShape { Path, Star };

/// The vertices of T_{n-j} pre-placed into the reserved block, and the path or
/// star T*_{k-j} that completes the tree they induce.
///
/// Local labels 1..|I_j| index `reserved`: local r is guest reserved[r - 1].
/// Stars put the center w_j at local 1. Paths list l first, then the pending
/// path from its attached end to its leaf, so T* is the path 1-2-...-|I_j|.
struct ReservedSets {
  int j = 0;
  std::vector<Vertex> a;
  std::vector<Vertex> reserved;
  CompletionShape shape = CompletionShape::Path;
  std::optional<Vertex> center;
  std::optional<Vertex> extra_leaf;
  /// T_{k-j} = T_{n-j}[I_j] on local labels.
  Graph induced;
  /// T*_{k-j} on local labels.
  Tree completion;
  /// E(T*) \ E(T_{k-j}) on local labels.
  std::vector<Edge> extra_edges;

  int size() const { return static_cast<int>(reserved.size()); }
  /// Local label of a guest vertex, 0 if not reserved.
  int local_of(Vertex guest) const;
};

/// Throws HypothesisViolated when no witness fits the class (type III needs
/// k-1-j leaf-neighbours of the maximum-degree vertex).
ReservedSets build_reserved(const Tree& t, int j, int k, const TreeClass& cls);

// --- Random tree families --------------------------------------------------------

enum class Family { Uniform, BoundedDegree, StarHeavy, PathHeavy };
std::string to_string(Family f);
/// Accepts uniform | bounded-degree | star-heavy | path-heavy.
Family parse_family(const std::string& name);

/// Random labelled tree of the given order. `degree_bound` only affects
/// BoundedDegree (must be >= 2).
Tree random_tree(Family family, int order, int degree_bound, Rng& rng);

/// Applies a vertex relabelling: vertex v becomes perm[v - 1].
Tree relabel(const Tree& t, std::span<const Vertex> perm);

}  // namespace tpack
