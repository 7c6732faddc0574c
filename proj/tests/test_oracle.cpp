#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <random>

#include "secretary/equilibrium.hpp"
#include "secretary/oracle.hpp"

using namespace secretary;
using Rational = boost::multiprecision::cpp_rational;

TEST_CASE("exact values of the equilibrium policy") {
  const GameConfig c3 = make_config(3, 0.5);
  const auto spec3 = equilibrium_spec(c3);
  CHECK(spec3.accept == std::vector<double>{0.5, 1.0, 1.0});
  CHECK(exact_success_probability(c3, spec3) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  CHECK(exact_expected_tau(c3, spec3) == doctest::Approx(1.25).epsilon(1e-15));

  const GameConfig c2 = make_config(2, 0.0);
  CHECK(exact_success_probability(c2, equilibrium_spec(c2)) == 0.5);
  CHECK(exact_expected_tau(c2, equilibrium_spec(c2)) == 1.0);
}

TEST_CASE("rational enumeration is exact") {
  const auto spec = PolicySpec<Rational>::equilibrium(3, 2, Rational(1, 2));
  const auto outcome = exact_outcome(spec);
  CHECK(outcome.success_probability == Rational(5, 12));
  CHECK(outcome.expected_tau == Rational(5, 4));
  // Path law: accept 1 w.p. 1/2, 2 w.p. 1/4, 3 w.p. 1/12.
  CHECK(outcome.acceptance_probability == Rational(1, 2) + Rational(1, 4) + Rational(1, 12));

  const auto four = PolicySpec<Rational>::equilibrium(4, compute_threshold(4), Rational(3, 10));
  const auto o4 = exact_outcome(four);
  CHECK(o4.expected_tau == 4 * o4.success_probability);
}

TEST_CASE("no-learning acceptance law (1/3, 1/3, 1/3) succeeds with probability 1/3") {
  const std::vector<Rational> law(3, Rational(1, 3));
  const auto spec = PolicySpec<Rational>::no_learning(law, Rational(1, 2));
  CHECK(spec.accept == std::vector<Rational>{Rational(1, 3), Rational(1, 2), Rational(1)});
  CHECK(exact_success_probability(spec) == Rational(1, 3));
}

TEST_CASE("no-learning success is exactly 1/N for random laws") {
  std::mt19937_64 gen(123);
  std::uniform_int_distribution<int> weight(0, 50);
  for (int n_total = 2; n_total <= 6; ++n_total) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> w(static_cast<std::size_t>(n_total));
      int total = 0;
      while (total == 0) {
        total = 0;
        for (int& x : w) total += (x = weight(gen));
      }
      std::vector<Rational> law;
      for (int x : w) law.emplace_back(x, total);
      const auto spec = PolicySpec<Rational>::no_learning(law, Rational(1, 5));
      CHECK(exact_success_probability(spec) == Rational(1, n_total));
    }
  }
}

TEST_CASE("three-way agreement on the full grid") {
  for (int n_total = 2; n_total <= 8; ++n_total) {
    for (int tenth = 0; tenth <= 9; ++tenth) {
      const GameConfig config = make_config(n_total, tenth / 10.0);
      const double dp = solve_values(config).success_probability;
      const ExactOutcome<double> exact = exact_outcome(equilibrium_spec(config));
      CAPTURE(n_total);
      CAPTURE(tenth);
      CHECK(std::abs(exact.success_probability - dp) <= 1e-12);
      CHECK(std::abs(closed_form_success(config) - dp) <= 1e-12);
      CHECK(std::abs(exact.expected_tau - n_total * exact.success_probability) <= 1e-12);
    }
  }
}

TEST_CASE("rational oracle matches the double backward induction") {
  for (int n_total : {4, 7}) {
    for (int tenth : {1, 3, 7}) {
      const Rational c(tenth, 10);
      const auto spec = PolicySpec<Rational>::equilibrium(n_total, compute_threshold(n_total), c);
      const auto outcome = exact_outcome(spec);
      CHECK(outcome.expected_tau == n_total * outcome.success_probability);
      const double dp = solve_values(make_config(n_total, tenth / 10.0)).success_probability;
      CHECK(std::abs(static_cast<double>(outcome.success_probability) - dp) <= 1e-12);
    }
  }
}

TEST_CASE("oracle continuation values reproduce the value tables") {
  for (int n_total = 2; n_total <= 7; ++n_total) {
    for (double c : {0.0, 0.4, 0.8}) {
      const GameConfig config = make_config(n_total, c);
      const auto tables = solve_values(config);
      const auto spec = equilibrium_spec(config);
      CHECK(exact_continuation_value(spec, 0, 0) == doctest::Approx(tables.success_probability));
      for (int n = 1; n <= n_total; ++n) {
        CAPTURE(n_total);
        CAPTURE(n);
        CHECK(exact_continuation_value(spec, n, 1) == doctest::Approx(tables.value1(n)).epsilon(1e-13));
        if (n > 1) {
          CHECK(exact_continuation_value(spec, n, 0) ==
                doctest::Approx(tables.value0(n)).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("oracle scaled values N V_{n,N}(0) are non-decreasing in N") {
  for (double c : {0.0, 0.3, 0.6}) {
    for (int n : {0, 2, 3, 4}) {  // stage 1 is always a record
      double previous = -1.0;
      for (int n_total = std::max(2, n + 1); n_total <= 8; ++n_total) {
        const double scaled =
            n_total * exact_continuation_value(equilibrium_spec(make_config(n_total, c)), n, 0);
        CAPTURE(n);
        CAPTURE(n_total);
        CHECK(scaled >= previous - 1e-13);
        previous = scaled;
      }
    }
  }
}

TEST_CASE("oracle rejects large or infeasible inputs") {
  CHECK_THROWS_AS(exact_success_probability(PolicySpec<double>::equilibrium(11, 4, 0.1)),
                  InvalidInstance);
  PolicySpec<double> bad = PolicySpec<double>::equilibrium(4, 2, 0.5);
  bad.accept[0] = 0.2;
  CHECK_FALSE(bad.feasible());
  CHECK_THROWS_AS(exact_success_probability(bad), InvalidInstance);
  CHECK_THROWS_AS(exact_success_probability(make_config(5, 0.5), bad), InvalidInstance);
  CHECK_THROWS_AS(exact_continuation_value(PolicySpec<double>::equilibrium(4, 2, 0.5), 1, 0),
                  InvalidInstance);
}

TEST_CASE("ignoring applicant 1 then learning is strictly worse at N=3, c=0.5") {
  // Stage 1 never accepts and nobody completes; stages 2-3 play the N=2
  // equilibrium: accept any record with probability 1.
  PolicySpec<Rational> spec{Rational(1, 2), {0, 1, 1}, {false, true, true}};
  const Rational value = exact_success_probability(spec);
  CHECK(value < Rational(5, 12));
  CHECK(value == Rational(1, 3));
}

TEST_CASE("two equally good policies at N=2") {
  for (double c : {0.0, 0.3, 0.8}) {
    PolicySpec<double> mixed{c, {c, 1.0}, {true, true}};
    PolicySpec<double> first{c, {1.0, 1.0}, {true, true}};
    CHECK(exact_success_probability(mixed) == doctest::Approx(0.5));
    CHECK(exact_success_probability(first) == doctest::Approx(0.5));
    CHECK(solve_values(make_config(2, c)).success_probability == doctest::Approx(0.5));
  }
}

TEST_CASE("optimality scan at N=3, c=0.5") {
  const ScanReport report = optimality_scan(make_config(3, 0.5), 0.25);
  CHECK(report.best_success == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
  CHECK(report.no_policy_beats_equilibrium);
  CHECK(report.equilibrium_attains_max);
  CHECK(report.best_policy.accept == std::vector<double>{0.5, 1.0, 1.0});
  // Stage 3 ties: accepting the last applicant blindly or after learning
  // succeeds equally often, so only the value of the reported policy is pinned.
  CHECK(exact_success_probability(report.best_policy) == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
  CHECK(report.policies_evaluated > 0);
}

TEST_CASE("optimality scan small grid sweep") {
  for (int n_total : {2, 3, 4}) {
    for (double c : {0.0, 0.25, 0.75}) {
      const ScanReport report = optimality_scan(make_config(n_total, c), 0.25);
      CAPTURE(n_total);
      CAPTURE(c);
      CHECK(report.no_policy_beats_equilibrium);
      CHECK(report.equilibrium_attains_max);
    }
  }
}

TEST_CASE("optimality scan input checks") {
  CHECK_THROWS_AS(optimality_scan(make_config(9, 0.5), 0.25), InvalidInstance);
  CHECK_THROWS_AS(optimality_scan(make_config(4, 0.5), 0.0), InvalidInstance);
  CHECK_THROWS_AS(optimality_scan(make_config(4, 0.5), 0.3), InvalidInstance);
  CHECK_THROWS_AS(optimality_scan(make_config(6, 0.0), 0.01, 1000), InvalidInstance);
}

TEST_CASE("full-learning audit") {
  CHECK(full_learning_audit(make_config(3, 0.5)).ok);
  CHECK(full_learning_audit(make_config(5, 0.0)).ok);

  const GameConfig config = make_config(3, 0.5);
  StrategyProfile profile = full_learning_profile(config);
  profile.stage(2).applicant = ApplicantRule::always_decline;
  const FullLearningAudit audit = full_learning_audit(config, profile);
  CHECK_FALSE(audit.ok);
  CHECK(audit.counterexample_prefix == 2);
  REQUIRE(audit.counterexample_ranks.size() == 3);
  CHECK(audit.counterexample_ranks[1] > audit.counterexample_ranks[0]);
}
