#include "secretary/asymptotics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "secretary/equilibrium.hpp"
#include "secretary/game_config.hpp"
#include "secretary/summation.hpp"

namespace secretary {

double gamma_function(double x) {
  if (!(x > 0.0 && x <= 3.0)) {
    throw InvalidInstance("gamma is supported on (0, 3], got " + std::to_string(x));
  }
  return std::tgamma(x);
}

double limit_constant(double cost) {
  if (!(cost >= 0.0 && cost < 1.0)) {
    throw InvalidInstance("cost must lie in [0, 1)");
  }
  return std::exp(cost - 1.0) / gamma_function(2.0 - cost);
}

ThresholdBounds threshold_bounds(int n_applicants) {
  if (n_applicants < 2) throw InvalidInstance("n_applicants must be >= 2");
  const double e = std::numbers::e;
  return {n_applicants / e, (n_applicants - 1) / e + 2.0};
}

double gauss_product_check(double cost, long long n) {
  if (!(cost >= 0.0 && cost < 1.0)) throw InvalidInstance("cost must lie in [0, 1)");
  if (n < 1) throw InvalidInstance("n must be >= 1");
  CompensatedSum<double> log_product;
  for (long long k = n; k >= 1; --k) {
    log_product += std::log1p(-cost / static_cast<double>(k));
  }
  return std::exp(cost * std::log(static_cast<double>(n)) + log_product.value());
}

bool AsymptoticReport::bounds_hold() const {
  for (const auto& s : threshold_samples) {
    if (!(s.lower_bound <= s.threshold && s.threshold <= s.upper_bound)) return false;
  }
  return true;
}

double AsymptoticReport::final_relative_deviation() const {
  if (samples.empty()) return 0.0;
  return std::abs(samples.back().scaled_value - limit_constant) / limit_constant;
}

AsymptoticReport convergence_report(double cost, const std::vector<int>& n_list) {
  AsymptoticReport report;
  report.cost = cost;
  report.limit_constant = limit_constant(cost);
  for (int n_total : n_list) {
    const GameConfig config = make_config(n_total, cost);
    const double pi = solve_values<double>(config).success_probability;
    report.samples.push_back({n_total, pi, std::pow(double(n_total), cost) * pi});
    const ThresholdBounds bounds = threshold_bounds(n_total);
    report.threshold_samples.push_back(
        {n_total, compute_threshold(n_total), bounds.lower, bounds.upper});
  }
  return report;
}

double log_log_slope(const std::vector<ScaledSample>& samples) {
  if (samples.size() < 2) throw InvalidInstance("slope needs at least two samples");
  const auto m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd response(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = std::log(double(s.n_applicants));
    response(i) = std::log(s.success_probability);
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(response);
  return fit(1);
}

}  // namespace secretary
