#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "secretary/game_config.hpp"
#include "secretary/profile.hpp"
#include "secretary/summation.hpp"

namespace secretary {

/// Largest N the permutation enumeration accepts.
inline constexpr int kMaxOracleApplicants = 10;

/// A stationary policy for the enumeration oracle.
///
/// Learning stage n: the applicant completes iff they beat all earlier
/// outputs and accept[n-1] >= cost; the administrator accepts a strictly
/// new output maximum with accept[n-1] and rejects everything else.
/// Non-learning stage n: the applicant declines and the administrator
/// accepts blindly with accept[n-1].
template <typename Scalar>
struct PolicySpec {
  Scalar cost{0};
  std::vector<Scalar> accept;
  std::vector<bool> learning;

  int n_stages() const { return static_cast<int>(accept.size()); }

  /// Every learning stage must accept records with probability in [c, 1];
  /// non-learning stages take any probability in [0, 1].
  bool feasible() const {
    if (learning.size() != accept.size()) return false;
    for (std::size_t i = 0; i < accept.size(); ++i) {
      if (accept[i] < Scalar(0) || accept[i] > Scalar(1)) return false;
      if (learning[i] && accept[i] != Scalar(0) && accept[i] < cost) return false;
    }
    return true;
  }

  /// Threshold policy: cost before n*, 1 from n* on, all stages learning.
  static PolicySpec equilibrium(int n_applicants, int threshold, Scalar cost) {
    PolicySpec spec{cost, {}, std::vector<bool>(static_cast<std::size_t>(n_applicants), true)};
    for (int n = 1; n <= n_applicants; ++n) {
      spec.accept.push_back(n < threshold ? cost : Scalar(1));
    }
    return spec;
  }

  /// Nobody learns; the accepted index has the given unconditional law.
  static PolicySpec no_learning(const std::vector<Scalar>& distribution, Scalar cost) {
    PolicySpec spec{cost, {}, std::vector<bool>(distribution.size(), false)};
    Scalar remaining(1);
    for (const Scalar& mass : distribution) {
      spec.accept.push_back(remaining > Scalar(0) ? std::min<Scalar>(Scalar(1), mass / remaining)
                                                  : Scalar(1));
      remaining -= mass;
    }
    return spec;
  }
};

template <typename Scalar>
struct ExactOutcome {
  Scalar success_probability{0};
  Scalar expected_tau{0};  // E[tau 1{accepted}]
  Scalar acceptance_probability{0};
};

namespace detail {

template <typename Scalar>
class Accumulator {
 public:
  void add(const Scalar& x) {
    if constexpr (std::is_floating_point_v<Scalar>) {
      compensated_ += x;
    } else {
      plain_ += x;
    }
  }
  Scalar value() const {
    if constexpr (std::is_floating_point_v<Scalar>) {
      return compensated_.value();
    } else {
      return plain_;
    }
  }

 private:
  CompensatedSum<std::conditional_t<std::is_floating_point_v<Scalar>, Scalar, double>>
      compensated_;
  Scalar plain_{0};
};

inline void check_oracle_size(int n_applicants) {
  if (n_applicants < 2) throw InvalidInstance("n_applicants must be >= 2");
  if (n_applicants > kMaxOracleApplicants) {
    throw InvalidInstance("enumeration oracle supports N <= " +
                          std::to_string(kMaxOracleApplicants) + ", got " +
                          std::to_string(n_applicants));
  }
}

inline long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// One stage of the oracle's game, on ranks 1..N (N is the best).
// Returns the acceptance probability and updates the output maximum.
template <typename Scalar>
Scalar stage_step(const PolicySpec<Scalar>& policy, int n, int rank, int& output_max) {
  const auto i = static_cast<std::size_t>(n - 1);
  const Scalar& q = policy.accept[i];
  if (!policy.learning[i]) return q;
  const bool completes = rank > output_max && q >= policy.cost;
  if (!completes) return Scalar(0);
  output_max = rank;
  return q;
}

}  // namespace detail

/// Exact law of the outcome: enumerate all N! rank orders, propagate the
/// acceptance probabilities along each order, weight each order by 1/N!.
template <typename Scalar>
ExactOutcome<Scalar> exact_outcome(const PolicySpec<Scalar>& policy) {
  const int n_total = policy.n_stages();
  detail::check_oracle_size(n_total);
  if (!policy.feasible()) throw InvalidInstance("policy is not feasible");

  std::vector<int> ranks(static_cast<std::size_t>(n_total));
  std::iota(ranks.begin(), ranks.end(), 1);
  detail::Accumulator<Scalar> success, tau, accepted;
  do {
    Scalar reach(1);
    int output_max = 0;
    for (int n = 1; n <= n_total; ++n) {
      const int rank = ranks[static_cast<std::size_t>(n - 1)];
      const Scalar p = detail::stage_step(policy, n, rank, output_max);
      if (p == Scalar(0)) continue;
      const Scalar mass = reach * p;
      accepted.add(mass);
      tau.add(mass * Scalar(n));
      if (rank == n_total) success.add(mass);
      reach -= mass;
      if (reach == Scalar(0)) break;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));

  const Scalar orders(detail::factorial(n_total));
  return {success.value() / orders, tau.value() / orders, accepted.value() / orders};
}

template <typename Scalar>
Scalar exact_success_probability(const PolicySpec<Scalar>& policy) {
  return exact_outcome(policy).success_probability;
}

template <typename Scalar>
Scalar exact_expected_tau(const PolicySpec<Scalar>& policy) {
  return exact_outcome(policy).expected_tau;
}

/// The oracle's reading of the value V_n(x): success probability from stage
/// n on, given full learning so far and state x at stage n (x = 1: applicant
/// n is the best so far and stage n's decision is still pending; x = 0: it
/// is not, or n = 0 before anyone was interviewed).
template <typename Scalar>
Scalar exact_continuation_value(const PolicySpec<Scalar>& policy, int n, int state) {
  const int n_total = policy.n_stages();
  detail::check_oracle_size(n_total);
  if (n < 0 || n > n_total || (n == 0 && state != 0) || (state != 0 && state != 1)) {
    throw InvalidInstance("no such stage/state");
  }
  std::vector<int> ranks(static_cast<std::size_t>(n_total));
  std::iota(ranks.begin(), ranks.end(), 1);
  detail::Accumulator<Scalar> success;
  long long matching = 0;
  do {
    const auto prefix_end = ranks.begin() + n;
    const int prefix_max = n == 0 ? 0 : *std::max_element(ranks.begin(), prefix_end);
    const bool record = n > 0 && ranks[static_cast<std::size_t>(n - 1)] == prefix_max;
    if (n > 0 && record != (state == 1)) continue;
    ++matching;
    Scalar reach(1);
    int output_max = prefix_max;
    if (state == 1) {
      const Scalar& q = policy.accept[static_cast<std::size_t>(n - 1)];
      if (prefix_max == n_total) success.add(q);
      reach -= q;
    }
    for (int m = n + 1; m <= n_total && reach != Scalar(0); ++m) {
      const int rank = ranks[static_cast<std::size_t>(m - 1)];
      const Scalar p = detail::stage_step(policy, m, rank, output_max);
      if (p == Scalar(0)) continue;
      if (rank == n_total) success.add(reach * p);
      reach -= reach * p;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  if (matching == 0) throw InvalidInstance("state is unreachable at this stage");
  return success.value() / Scalar(matching);
}

/// Equilibrium policy in the oracle's own terms (double arithmetic).
PolicySpec<double> equilibrium_spec(const GameConfig& config);

double exact_success_probability(const GameConfig& config, const PolicySpec<double>& policy);
double exact_expected_tau(const GameConfig& config, const PolicySpec<double>& policy);

struct ScanReport {
  int n_applicants = 0;
  double cost = 0.0;
  double grid_step = 0.0;
  long long policies_evaluated = 0;
  double best_success = 0.0;
  PolicySpec<double> best_policy;
  double equilibrium_success = 0.0;  // oracle value of the threshold policy
  double dp_success = 0.0;           // pi_N from backward induction
  bool no_policy_beats_equilibrium = false;
  bool equilibrium_attains_max = false;
  std::string note =
      "grid scan over stationary policies: evidence at grid resolution, not a proof";
};

/// Exhaustive scan over accept[n] in {0} U {c, c+step, ..., 1} and every
/// learning pattern. Rejects N > 8 and scans larger than policy_budget.
ScanReport optimality_scan(const GameConfig& config, double grid_step,
                           long long policy_budget = 50'000'000);

struct FullLearningAudit {
  bool ok = true;
  std::vector<int> counterexample_ranks;  // order that breaks full learning
  int counterexample_prefix = 0;          // length of the offending prefix
};

/// For every rank order and every prefix reached with positive probability,
/// checks that the best ability so far equals the best output so far.
FullLearningAudit full_learning_audit(const GameConfig& config);
FullLearningAudit full_learning_audit(const GameConfig& config, const StrategyProfile& profile);

}  // namespace secretary
