#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "secretary/asymptotics.hpp"
#include "secretary/equilibrium.hpp"

using namespace secretary;

namespace {

// Truncated Gauss product n^z n! / (z (z+1) ... (z+n)), in log space.
double gauss_product_gamma(double z, long long n) {
  double log_value = z * std::log(double(n)) - std::log(z);
  for (long long k = 1; k <= n; ++k) log_value += std::log(double(k)) - std::log(z + double(k));
  return std::exp(log_value);
}

}  // namespace

TEST_CASE("gamma at known points") {
  CHECK(gamma_function(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_function(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_function(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  const double root_pi = std::sqrt(std::numbers::pi);
  CHECK(std::abs(gamma_function(0.5) - root_pi) / root_pi <= 1e-12);
  CHECK(std::abs(gamma_function(1.5) - root_pi / 2) / (root_pi / 2) <= 1e-12);
}

TEST_CASE("gamma agrees with the truncated Gauss product") {
  // The product converges like O(1/n); at n = 1e6 relative error ~ z(z+1)/2n.
  for (double z : {0.1, 0.5, 0.9, 1.1, 1.5, 1.9, 2.5}) {
    CAPTURE(z);
    CHECK(std::abs(gauss_product_gamma(z, 1'000'000) - gamma_function(z)) / gamma_function(z) < 1e-5);
  }
}

TEST_CASE("gamma rejects its poles and the unsupported range") {
  CHECK_THROWS_AS(gamma_function(0.0), InvalidInstance);
  CHECK_THROWS_AS(gamma_function(-1.5), InvalidInstance);
  CHECK_THROWS_AS(gamma_function(3.5), InvalidInstance);
}

TEST_CASE("limit constant") {
  CHECK(limit_constant(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(limit_constant(0.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  CHECK(gamma_function(2.0 - 0.0) == doctest::Approx(1.0));
  // e^{-0.9} / Gamma(1.9), pinned after the sqrt(pi) cross-check above.
  CHECK(limit_constant(0.1) == doctest::Approx(0.42273248461559976).epsilon(1e-12));
  CHECK_THROWS_AS(limit_constant(1.0), InvalidInstance);
  CHECK_THROWS_AS(limit_constant(-0.2), InvalidInstance);
}

TEST_CASE("threshold bounds") {
  const auto ten = threshold_bounds(10);
  CHECK(ten.lower == doctest::Approx(3.6787944117144233));
  CHECK(ten.upper == doctest::Approx(9.0 / std::numbers::e + 2.0));
  CHECK(ten.contains(compute_threshold(10)));
  const auto two = threshold_bounds(2);
  CHECK(two.lower == doctest::Approx(0.7357588823428847));
  CHECK(two.upper == doctest::Approx(2.3678794411714423));
  CHECK(two.contains(1));
  CHECK_THROWS_AS(threshold_bounds(1), InvalidInstance);
}

TEST_CASE("threshold bounds contain the threshold and the ratio tends to 1/e") {
  const auto seq = threshold_sequence(100000);
  for (int n = 2; n <= 100000; ++n) {
    const auto b = threshold_bounds(n);
    const int t = seq[static_cast<std::size_t>(n)];
    if (!b.contains(t)) FAIL("bounds violated at N=" << n);
    if (n > 2 && t < seq[static_cast<std::size_t>(n - 1)]) FAIL("threshold decreased at " << n);
  }
  const int n_big = 1'000'000;
  CHECK(std::abs(double(compute_threshold(n_big)) / n_big - 1.0 / std::numbers::e) <= 1e-3);
}

TEST_CASE("harmonic sandwich for N >= 6") {
  const auto seq = threshold_sequence(20000);
  for (int n_total = 6; n_total <= 20000; ++n_total) {
    const int t = seq[static_cast<std::size_t>(n_total)];
    double sum = 0.0;
    for (int n = n_total; n >= t; --n) sum += 1.0 / (n - 1);
    if (!(sum > 1.0 && sum <= 1.0 + 1.0 / (t - 1) + 1e-14)) {
      FAIL("sandwich fails at N=" << n_total);
    }
  }
}

TEST_CASE("gauss product check") {
  for (long long n : {1LL, 10LL, 1000LL}) CHECK(gauss_product_check(0.0, n) == 1.0);
  CHECK(std::abs(gauss_product_check(0.5, 1'000'000) - 1.0 / std::sqrt(std::numbers::pi)) < 1e-3);
  CHECK(gauss_product_check(0.5, 2) == doctest::Approx(std::sqrt(2.0) * 0.375).epsilon(1e-14));
  for (double c : {0.1, 0.5, 0.9}) {
    const double target = 1.0 / gamma_function(1.0 - c);
    double previous = 1e300;
    for (long long n : {1'000LL, 10'000LL, 100'000LL, 1'000'000LL}) {
      const double deviation = std::abs(gauss_product_check(c, n) - target);
      CAPTURE(c);
      CAPTURE(n);
      CHECK(deviation < previous);
      previous = deviation;
    }
  }
  CHECK_THROWS_AS(gauss_product_check(0.5, 0), InvalidInstance);
}

TEST_CASE("gauss product agrees with the direct survival product") {
  for (double c : {0.1, 0.7}) {
    for (int n : {1, 5, 300}) {
      CHECK(gauss_product_check(c, n) ==
            doctest::Approx(std::pow(double(n), c) * record_survival_product(n, c)).epsilon(1e-13));
    }
  }
}

TEST_CASE("convergence report for the classical case") {
  const auto report = convergence_report(0.0, {2, 10, 100, 1000});
  CHECK(report.samples[0].scaled_value == doctest::Approx(0.5).epsilon(1e-15));
  double previous = 1.0;
  for (std::size_t i = 1; i < report.samples.size(); ++i) {
    const double deviation = std::abs(report.samples[i].scaled_value - report.limit_constant);
    CHECK(deviation < 0.05);
    CHECK(deviation < previous);
    previous = deviation;
  }
  CHECK(report.bounds_hold());
  CHECK_FALSE(report.tolerance_note.empty());
}

TEST_CASE("convergence report at N = 1e6 with c = 0.1") {
  const auto report = convergence_report(0.1, {1'000'000});
  CHECK(report.converged());
  CHECK(report.final_relative_deviation() < 0.05);
  CHECK(report.bounds_hold());
}

TEST_CASE("convergence report is order independent") {
  const auto forward = convergence_report(0.4, {50, 500, 5000});
  const auto backward = convergence_report(0.4, {5000, 500, 50});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(forward.samples[i].scaled_value == backward.samples[2 - i].scaled_value);
  }
  CHECK_THROWS_AS(convergence_report(0.4, {1}), InvalidInstance);
}

TEST_CASE("log-log slope recovers an exact power law") {
  std::vector<ScaledSample> samples;
  for (int n : {10, 100, 1000}) samples.push_back({n, 3.0 * std::pow(double(n), -0.25), 0.0});
  CHECK(log_log_slope(samples) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK_THROWS_AS(log_log_slope({samples[0]}), InvalidInstance);
}
