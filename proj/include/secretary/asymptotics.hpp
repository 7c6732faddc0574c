#pragma once

#include <string>
#include <utility>
#include <vector>

namespace secretary {

/// Gamma function on (0, 3], the range needed for Gamma(1-c) and Gamma(2-c).
/// Relative error is at the libm level (well below 1e-12).
double gamma_function(double x);

/// lim_{N->inf} N^c pi_N = e^{c-1} / Gamma(2-c).
double limit_constant(double cost);

struct ThresholdBounds {
  double lower;  // N/e
  double upper;  // (N-1)/e + 2

  bool contains(double n_star) const { return lower <= n_star && n_star <= upper; }
};

ThresholdBounds threshold_bounds(int n_applicants);

/// n^c S_n(c); tends to 1/Gamma(1-c). S_n is accumulated in log space.
double gauss_product_check(double cost, long long n);

struct ScaledSample {
  int n_applicants;
  double success_probability;
  double scaled_value;  // N^c pi_N
};

struct ThresholdSample {
  int n_applicants;
  int threshold;
  double lower_bound;
  double upper_bound;
};

/// Empirical convergence diagnostics for the power-law limit. The
/// tolerances are acceptance thresholds picked from observed error decay;
/// no convergence rate is proven for these limits.
struct AsymptoticReport {
  double cost = 0.0;
  double limit_constant = 0.0;
  std::vector<ScaledSample> samples;
  std::vector<ThresholdSample> threshold_samples;
  double scaled_tolerance = 0.05;     // relative, on the last scaled value
  double threshold_ratio_tolerance = 1e-3;
  std::string tolerance_note =
      "tolerances are empirical acceptance thresholds, not proven rates";

  bool bounds_hold() const;
  /// Relative deviation of the last scaled value from the limit constant.
  double final_relative_deviation() const;
  bool converged() const { return final_relative_deviation() < scaled_tolerance; }
};

/// Solves each N (by backward induction) and records N^c pi_N and the
/// threshold bounds. Instances are independent; the report's order follows
/// n_list.
AsymptoticReport convergence_report(double cost, const std::vector<int>& n_list);

/// Least-squares slope of log pi_N against log N.
double log_log_slope(const std::vector<ScaledSample>& samples);

}  // namespace secretary
