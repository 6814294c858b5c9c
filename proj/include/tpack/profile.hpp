#pragma once

#include <string>

namespace tpack {

enum class Preset { Faithful, Desk };

std::string to_string(Preset p);
/// Accepts "faithful" or "desk"; throws std::invalid_argument otherwise.
Preset parse_preset(const std::string& name);

/// Every numeric threshold used by the packing procedures, as functions of
/// the host order n and the tree count k.
///
/// Faithful evaluates the asymptotic constants literally; they only become
/// meaningful for astronomically large n. Desk keeps the same formulas but
/// clamps them so that each stage has a non-trivial horizon for n in the
/// tens to thousands:
///   - delta_I is capped at floor((n-1)/2);
///   - the "high degree" cutoffs (n^{1/4}/(270(2k+1)), n^{1/4}, 360 sqrt n)
///     are raised to desk_cutoff_factor * sqrt(n);
///   - the candidate degree cap a (26k, 180) equals that cutoff, so candidate
///     vertices are never high-degree vertices;
///   - the sampling probability is desk_probability_factor / a (< 1/a);
///   - the concentration thresholds become 4 k n p + 1 (for |C_i|) and
///     desk_min_d (for |D_i|), checked up to the actual stage horizon;
///   - q is raised to at least desk_min_q.
struct ConstantsProfile {
  Preset preset = Preset::Desk;
  /// Slack for "2n/3 + o(n)" (0.05 when faithful).
  double eps = 0.1;
  /// R: resamples per stage and pipeline seed retries.
  int retries = 8;
  /// Whole-instance randomized restarts in the pipeline fallback ladder.
  int restarts = 4;
  /// N_oracle: largest n handed to exhaustive search.
  int oracle_max_n = 9;
  /// Largest k accepted by the small path/star packer.
  int small_pack_max_k = 12;

  double desk_cutoff_factor = 2.0;
  double desk_probability_factor = 0.5;
  int desk_min_d = 1;
  double desk_min_q = 3.0;
  /// Stage-2 horizon cap as a fraction of n.
  double desk_horizon_fraction = 0.05;

  static ConstantsProfile faithful();
  static ConstantsProfile desk();
  static ConstantsProfile from_preset(Preset p);

  bool is_faithful() const { return preset == Preset::Faithful; }

  /// Type I / II boundary: 60(2k+1) n^{3/4}.
  double delta_I(int n, int k) const;
  /// Type II / III boundary: 2n/3.
  double delta_III(int n) const;
  /// (2/3 + eps) n.
  double degree_budget(int n) const;

  // Low-max-degree packing.
  /// a = 26k.
  double candidate_degree_cap(int n, int k) const;
  /// p = n^{-3/4} / (540 * 26 k^2 (2k+1)).
  double sample_probability(int n, int k) const;
  /// G-vertices at or above this degree are matched first: n^{1/4}/(270(2k+1)).
  double high_degree_cutoff(int n, int k) const;
  /// Upper limit on the number of first-matched vertices (x).
  int stage2_cap(int n, int k) const;
  /// |C_i| must not exceed this: n^{1/4}/(240(2k+1)).
  double c_bound(int n, int k) const;
  /// |D_i| must reach this: k(2k+1)+3.
  double d_bound(int n, int k) const;
  /// Ranks i for which the |D_i| bound is required, given the actual x.
  int d_horizon(int n, int k, int x) const;
  /// Both |C_i| thresholds dominate 4 kn p.
  bool sparse_thresholds_consistent(int n, int k) const;

  // High-max-degree packing.
  /// q = n^{1/4}/(59(2k+1)).
  double q(int n, int k) const;
  /// z cutoff: n^{1/4}.
  double dense_high_degree_cutoff(int n, int k) const;
  int dense_stage2_cap(int n, int k) const;
  /// y cutoff: 360 sqrt n.
  double hub_cutoff(int n) const;
  /// 1/sqrt n.
  double dense_probability(int n) const;
  /// Independent-set degree cap: 180.
  double independent_degree_cap(int n) const;
  /// 4 sqrt n.
  double c_prime_bound(int n) const;
  /// sqrt n / (20e).
  double d_prime_bound(int n) const;
  /// 4k.
  double low_degree_cap(int k) const;
  /// sqrt(n)/(20e) <= p |A'_i| / (2e) with |A'_i| >= n/10.
  bool dense_thresholds_consistent(int n) const;
};

}  // namespace tpack
