#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "secretary/game_config.hpp"

namespace secretary {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Least n in 1..N with sum_{k=n}^{N-1} 1/k <= 1.
///
/// The comparison against 1 is a hard boundary, so the harmonic tail is
/// accumulated with compensated summation and re-decided in exact rational
/// arithmetic whenever it lands inside the floating-point error bound.
int compute_threshold(int n_applicants);

/// Thresholds for every N in 2..max_n, indexed by N (entries 0 and 1 are 0).
/// Uses a sliding harmonic window and the monotonicity of the threshold in N;
/// agrees with compute_threshold at every index.
std::vector<int> threshold_sequence(int max_n);

/// Normalized value functions v_n(x) = V_n(x)/n of the full-learning
/// equilibrium, stored 0-based (entry n-1 holds stage n).
template <typename Scalar = double>
struct ValueTables {
  int n_applicants = 0;
  double cost = 0.0;
  Vector<Scalar> v0;  // current applicant dominated by an earlier one
  Vector<Scalar> v1;  // current applicant is the best so far
  int threshold = 0;
  Scalar success_probability{0};

  Scalar normalized0(int n) const { return v0(n - 1); }
  Scalar normalized1(int n) const { return v1(n - 1); }
  Scalar value0(int n) const { return Scalar(n) * v0(n - 1); }
  Scalar value1(int n) const { return Scalar(n) * v1(n - 1); }

  /// First stage whose v_n(0) is at most 1/N, read off the tables directly.
  int threshold_from_values() const {
    const Scalar bound = Scalar(1) / Scalar(n_applicants);
    for (int n = 1; n <= n_applicants; ++n) {
      if (v0(n - 1) <= bound) return n;
    }
    return n_applicants;
  }
};

/// Backward induction on the normalized Bellman equations:
///   v_N(0) = 0, v_N(1) = 1/N,
///   v_n(0) = v_{n+1}(1)/n + v_{n+1}(0),
///   v_n(1) = max{c/N + (1-c) v_n(0), 1/N}.
template <typename Scalar = double>
ValueTables<Scalar> solve_values(const GameConfig& config) {
  config.validate();
  const int n_total = config.n_applicants;
  const Scalar inv_n = Scalar(1) / Scalar(n_total);
  const Scalar c = Scalar(config.cost);

  ValueTables<Scalar> tables;
  tables.n_applicants = n_total;
  tables.cost = config.cost;
  tables.v0.resize(n_total);
  tables.v1.resize(n_total);
  tables.v0(n_total - 1) = Scalar(0);
  tables.v1(n_total - 1) = inv_n;
  for (int n = n_total - 1; n >= 1; --n) {
    const Scalar stay = tables.v1(n) / Scalar(n) + tables.v0(n);
    tables.v0(n - 1) = stay;
    tables.v1(n - 1) = std::max<Scalar>(c * inv_n + (Scalar(1) - c) * stay, inv_n);
  }
  tables.threshold = compute_threshold(n_total);
  tables.success_probability = tables.v1(0);
  return tables;
}

/// The administrator's equilibrium rule: accept a strictly new, positive
/// output maximum at stage n with probability accept_record(n-1); accept
/// anything else with probability 0.
struct EquilibriumPolicy {
  int n_applicants = 0;
  double cost = 0.0;
  int threshold = 0;
  Eigen::VectorXd accept_record;
  static constexpr double accept_nonrecord = 0.0;

  double record_acceptance(int n) const { return accept_record(n - 1); }
};

EquilibriumPolicy build_policy(const GameConfig& config,
                               const ValueTables<double>& tables);

/// Convenience: solve and build in one step.
EquilibriumPolicy equilibrium_policy(const GameConfig& config);

/// S_n(c) = prod_{k=1}^{n} (1 - c/k), with S_0(c) = 1.
double record_survival_product(int n, double cost);

/// Success probability from the explicit formula
///   (c/N) sum_{n<n*} S_{n-1}(c) + ((n*-1)/N) S_{n*-1}(c) sum_{n=n*}^{N} 1/(n-1).
double closed_form_success(const GameConfig& config);

/// E[tau] = c sum_{n<n*} S_{n-1}(c) + S_{n*-1}(c) sum_{n=n*}^{N} (n*-1)/(n-1),
/// with tau counted as 0 when no applicant is accepted.
double expected_stopping_time(const GameConfig& config);

/// Probability that the equilibrium accepts applicant n, for n = 1..N
/// (0-based vector). Sums to the probability that anyone is accepted.
Eigen::VectorXd acceptance_distribution(const GameConfig& config);

}  // namespace secretary
