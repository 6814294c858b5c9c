#include "tpack/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tpack {

namespace {

double quarter(int n) { return std::pow(static_cast<double>(n), 0.25); }
double three_quarters(int n) { return std::pow(static_cast<double>(n), 0.75); }
double root(int n) { return std::sqrt(static_cast<double>(n)); }

}  // namespace

std::string to_string(Preset p) { return p == Preset::Faithful ? "faithful" : "desk"; }

Preset parse_preset(const std::string& name) {
  if (name == "faithful") return Preset::Faithful;
  if (name == "desk") return Preset::Desk;
  throw std::invalid_argument("unknown profile '" + name + "' (expected faithful|desk)");
}

ConstantsProfile ConstantsProfile::faithful() {
  ConstantsProfile p;
  p.preset = Preset::Faithful;
  p.eps = 0.05;
  return p;
}

ConstantsProfile ConstantsProfile::desk() { return ConstantsProfile{}; }

ConstantsProfile ConstantsProfile::from_preset(Preset p) {
  return p == Preset::Faithful ? faithful() : desk();
}

double ConstantsProfile::delta_I(int n, int k) const {
  const double literal = 60.0 * (2 * k + 1) * three_quarters(n);
  if (is_faithful()) return literal;
  return std::min(literal, std::floor((n - 1) / 2.0));
}

double ConstantsProfile::delta_III(int n) const { return 2.0 * n / 3.0; }

double ConstantsProfile::degree_budget(int n) const { return (2.0 / 3.0 + eps) * n; }

double ConstantsProfile::candidate_degree_cap(int n, int k) const {
  if (is_faithful()) return 26.0 * k;
  return high_degree_cutoff(n, k);
}

double ConstantsProfile::sample_probability(int n, int k) const {
  if (is_faithful())
    return std::pow(static_cast<double>(n), -0.75) / (540.0 * 26.0 * k * k * (2 * k + 1));
  return desk_probability_factor / candidate_degree_cap(n, k);
}

double ConstantsProfile::high_degree_cutoff(int n, int k) const {
  const double literal = quarter(n) / (270.0 * (2 * k + 1));
  if (is_faithful()) return literal;
  return std::max(literal, std::ceil(desk_cutoff_factor * root(n)));
}

int ConstantsProfile::stage2_cap(int n, int k) const {
  if (is_faithful()) return n;
  (void)k;
  return std::max(1, static_cast<int>(desk_horizon_fraction * n));
}

double ConstantsProfile::c_bound(int n, int k) const {
  const double literal = quarter(n) / (240.0 * (2 * k + 1));
  if (is_faithful()) return literal;
  return std::max(literal, 4.0 * k * n * sample_probability(n, k) + 1.0);
}

double ConstantsProfile::d_bound(int n, int k) const {
  if (is_faithful()) return k * (2.0 * k + 1) + 3.0;
  (void)n;
  return desk_min_d;
}

int ConstantsProfile::d_horizon(int n, int k, int x) const {
  if (is_faithful())
    return static_cast<int>(std::min<double>(n, std::floor(540.0 * k * (2 * k + 1) *
                                                            three_quarters(n))));
  return x;
}

bool ConstantsProfile::sparse_thresholds_consistent(int n, int k) const {
  return 4.0 * k * n * sample_probability(n, k) < c_bound(n, k);
}

double ConstantsProfile::q(int n, int k) const {
  const double literal = quarter(n) / (59.0 * (2 * k + 1));
  if (is_faithful()) return literal;
  return std::max(literal, desk_min_q);
}

double ConstantsProfile::dense_high_degree_cutoff(int n, int k) const {
  if (is_faithful()) return quarter(n);
  return std::max(quarter(n), high_degree_cutoff(n, k));
}

int ConstantsProfile::dense_stage2_cap(int n, int k) const { return stage2_cap(n, k); }

double ConstantsProfile::hub_cutoff(int n) const {
  const double literal = 360.0 * root(n);
  if (is_faithful()) return literal;
  return std::min(literal, std::ceil(desk_cutoff_factor * root(n)));
}

double ConstantsProfile::dense_probability(int n) const { return 1.0 / root(n); }

double ConstantsProfile::independent_degree_cap(int n) const {
  if (is_faithful()) return 180.0;
  return std::min(180.0, hub_cutoff(n));
}

double ConstantsProfile::c_prime_bound(int n) const { return 4.0 * root(n); }

double ConstantsProfile::d_prime_bound(int n) const { return root(n) / (20.0 * std::numbers::e); }

double ConstantsProfile::low_degree_cap(int k) const { return 4.0 * k; }

bool ConstantsProfile::dense_thresholds_consistent(int n) const {
  const double a_prime = n / 10.0;
  return d_prime_bound(n) <= dense_probability(n) * a_prime / (2.0 * std::numbers::e) + 1e-12;
}

}  // namespace tpack
