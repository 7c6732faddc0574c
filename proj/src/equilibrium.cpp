#include "secretary/equilibrium.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

#include "secretary/summation.hpp"

namespace secretary {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Bound on |computed - exact| for a fresh compensated harmonic tail. Each
// reciprocal carries one rounding (relative u), Neumaier adds 2u|sum|, so
// a few ulps of a sum near 1 suffice; this leaves orders of magnitude slack.
constexpr double kFreshTailTolerance = 1e-13;
// The sliding window adds and subtracts the same reciprocals; its drift is
// second order in u, but it is only trusted outside this band.
constexpr double kSlidingTailTolerance = 1e-9;

double fresh_tail(int from, int to) {
  CompensatedSum<double> sum;
  for (int k = to; k >= from; --k) sum += 1.0 / k;
  return sum.value();
}

bool exact_tail_at_most_one(int from, int to) {
  Rational sum = 0;
  for (int k = from; k <= to; ++k) sum += Rational(1, k);
  return sum <= 1;
}

// Decides sum_{k=from}^{to} 1/k <= 1 given an approximation and its bound.
bool tail_at_most_one(int from, int to, double approx, double tolerance) {
  if (std::abs(approx - 1.0) > tolerance) return approx <= 1.0;
  if (tolerance > kFreshTailTolerance) {
    return tail_at_most_one(from, to, fresh_tail(from, to), kFreshTailTolerance);
  }
  return exact_tail_at_most_one(from, to);
}

}  // namespace

int compute_threshold(int n_applicants) {
  if (n_applicants < 2) {
    throw InvalidInstance("n_applicants must be >= 2, got " +
                          std::to_string(n_applicants));
  }
  // The empty tail at n = N is 0 <= 1; extend downwards while it stays <= 1.
  // Terms grow as k decreases, so this is also smallest-first order.
  CompensatedSum<double> tail;
  int n = n_applicants;
  while (n > 1) {
    CompensatedSum<double> extended = tail;
    extended += 1.0 / (n - 1);
    if (!tail_at_most_one(n - 1, n_applicants - 1, extended.value(),
                          kFreshTailTolerance)) {
      break;
    }
    tail = extended;
    --n;
  }
  return n;
}

std::vector<int> threshold_sequence(int max_n) {
  if (max_n < 2) {
    throw InvalidInstance("max_n must be >= 2, got " + std::to_string(max_n));
  }
  std::vector<int> thresholds(static_cast<std::size_t>(max_n) + 1, 0);
  thresholds[2] = compute_threshold(2);
  int low = thresholds[2];
  CompensatedSum<double> window;  // sum_{k=low}^{N-1} 1/k
  for (int k = low; k <= 1; ++k) window += 1.0 / k;
  for (int n_total = 3; n_total <= max_n; ++n_total) {
    window += 1.0 / (n_total - 1);
    while (!tail_at_most_one(low, n_total - 1, window.value(),
                             kSlidingTailTolerance)) {
      window -= 1.0 / low;
      ++low;
    }
    thresholds[static_cast<std::size_t>(n_total)] = low;
  }
  return thresholds;
}

EquilibriumPolicy build_policy(const GameConfig& config,
                               const ValueTables<double>& tables) {
  config.validate();
  if (tables.n_applicants != config.n_applicants ||
      tables.cost != config.cost ||
      tables.v0.size() != config.n_applicants ||
      tables.v1.size() != config.n_applicants) {
    throw InvalidInstance("value tables were not solved for this instance");
  }
  if (tables.threshold != compute_threshold(config.n_applicants)) {
    throw InvalidInstance("value tables carry an inconsistent threshold");
  }
  EquilibriumPolicy policy;
  policy.n_applicants = config.n_applicants;
  policy.cost = config.cost;
  policy.threshold = tables.threshold;
  policy.accept_record.resize(config.n_applicants);
  for (int n = 1; n <= config.n_applicants; ++n) {
    policy.accept_record(n - 1) = n < tables.threshold ? config.cost : 1.0;
  }
  return policy;
}

EquilibriumPolicy equilibrium_policy(const GameConfig& config) {
  return build_policy(config, solve_values<double>(config));
}

double record_survival_product(int n, double cost) {
  if (n < 0) throw InvalidInstance("n must be >= 0");
  if (!(cost >= 0.0 && cost < 1.0)) {
    throw InvalidInstance("cost must lie in [0, 1)");
  }
  double product = 1.0;
  for (int k = 1; k <= n; ++k) product *= 1.0 - cost / k;
  return product;
}

namespace {

// Pieces shared by the success and stopping-time formulas.
struct PreThreshold {
  double survival_sum;  // sum_{n=1}^{n*-1} S_{n-1}(c)
  double survival;      // S_{n*-1}(c)
  int threshold;
};

PreThreshold pre_threshold(const GameConfig& config) {
  config.validate();
  const int n_star = compute_threshold(config.n_applicants);
  // S_0 .. S_{n*-1}; S is decreasing, so sum from the tail for accuracy.
  std::vector<double> survival(static_cast<std::size_t>(n_star));
  survival[0] = 1.0;
  for (int k = 1; k < n_star; ++k) {
    survival[static_cast<std::size_t>(k)] =
        survival[static_cast<std::size_t>(k - 1)] * (1.0 - config.cost / k);
  }
  CompensatedSum<double> sum;
  for (int n = n_star - 1; n >= 1; --n) sum += survival[static_cast<std::size_t>(n - 1)];
  return {sum.value(), survival.back(), n_star};
}

}  // namespace

// In both formulas the n = n* term of the trailing sum is peeled off with
// its limit value: ((n*-1)/N) * 1/(n*-1) -> 1/N and (n*-1)/(n*-1) -> 1.
// This is what iterating V_{n-1}(0) = 1/N + (1 - 1/n) V_n(0) from n = n*
// gives, and it stays well defined at n* = 1.

double closed_form_success(const GameConfig& config) {
  const PreThreshold pre = pre_threshold(config);
  const double n_total = config.n_applicants;
  CompensatedSum<double> tail;
  for (int n = config.n_applicants; n > pre.threshold; --n) tail += 1.0 / (n - 1);
  const double post = 1.0 / n_total + (pre.threshold - 1) / n_total * tail.value();
  return config.cost / n_total * pre.survival_sum + pre.survival * post;
}

double expected_stopping_time(const GameConfig& config) {
  const PreThreshold pre = pre_threshold(config);
  const double before = pre.threshold - 1.0;
  CompensatedSum<double> tail;
  for (int n = config.n_applicants; n > pre.threshold; --n) tail += before / (n - 1);
  return config.cost * pre.survival_sum + pre.survival * (1.0 + tail.value());
}

Eigen::VectorXd acceptance_distribution(const GameConfig& config) {
  config.validate();
  const int n_star = compute_threshold(config.n_applicants);
  Eigen::VectorXd accept(config.n_applicants);
  double survival = 1.0;  // probability nobody was accepted before stage n
  for (int n = 1; n <= config.n_applicants; ++n) {
    const double p = n < n_star ? config.cost : 1.0;
    accept(n - 1) = survival * p / n;
    survival *= 1.0 - p / n;
  }
  return accept;
}

}  // namespace secretary
