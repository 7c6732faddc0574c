#include "secretary/oracle.hpp"

#include <cmath>

#include "secretary/equilibrium.hpp"

namespace secretary {

PolicySpec<double> equilibrium_spec(const GameConfig& config) {
  config.validate();
  return PolicySpec<double>::equilibrium(config.n_applicants,
                                         compute_threshold(config.n_applicants), config.cost);
}

namespace {

void check_matches(const GameConfig& config, const PolicySpec<double>& policy) {
  config.validate();
  if (policy.n_stages() != config.n_applicants || policy.cost != config.cost) {
    throw InvalidInstance("policy does not match the instance");
  }
}

std::vector<double> acceptance_grid(double cost, double step) {
  std::vector<double> grid{0.0};
  for (int k = 0;; ++k) {
    const double q = cost + k * step;
    if (q >= 1.0 - 1e-12) break;
    if (q > 0.0) grid.push_back(q);
  }
  grid.push_back(1.0);
  return grid;
}

struct StageOption {
  bool learning;
  double accept;
};

// Depth-first scan; each level holds the per-order state after its stage so
// sibling policies share the work done on their common prefix.
class Scanner {
 public:
  Scanner(const GameConfig& config, std::vector<StageOption> options)
      : n_total_(config.n_applicants), cost_(config.cost), options_(std::move(options)) {
    std::vector<int> ranks(static_cast<std::size_t>(n_total_));
    std::iota(ranks.begin(), ranks.end(), 1);
    do {
      orders_.push_back(ranks);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    const std::size_t levels = static_cast<std::size_t>(n_total_) + 1;
    reach_.assign(levels, std::vector<double>(orders_.size(), 1.0));
    output_max_.assign(levels, std::vector<int>(orders_.size(), 0));
    chosen_.resize(static_cast<std::size_t>(n_total_));
  }

  void run() { descend(0, 0.0); }

  long long evaluated() const { return evaluated_; }
  double best() const { return best_ / static_cast<double>(orders_.size()); }
  const std::vector<StageOption>& best_choice() const { return best_choice_; }

 private:
  void descend(int depth, double success) {
    if (depth == n_total_) {
      ++evaluated_;
      if (success > best_) {
        best_ = success;
        best_choice_ = chosen_;
      }
      return;
    }
    const auto level = static_cast<std::size_t>(depth);
    for (const StageOption& option : options_) {
      chosen_[level] = option;
      CompensatedSum<double> gained;
      const auto& reach_in = reach_[level];
      const auto& max_in = output_max_[level];
      auto& reach_out = reach_[level + 1];
      auto& max_out = output_max_[level + 1];
      const bool completes_if_best = option.learning && option.accept >= cost_;
      for (std::size_t i = 0; i < orders_.size(); ++i) {
        const int rank = orders_[i][level];
        int out_max = max_in[i];
        double p = option.accept;
        if (option.learning) {
          if (completes_if_best && rank > out_max) {
            out_max = rank;
          } else {
            p = 0.0;
          }
        }
        const double mass = reach_in[i] * p;
        if (rank == n_total_) gained += mass;
        reach_out[i] = reach_in[i] - mass;
        max_out[i] = out_max;
      }
      descend(depth + 1, success + gained.value());
    }
  }

  int n_total_;
  double cost_;
  std::vector<StageOption> options_;
  std::vector<std::vector<int>> orders_;
  std::vector<std::vector<double>> reach_;
  std::vector<std::vector<int>> output_max_;
  std::vector<StageOption> chosen_;
  std::vector<StageOption> best_choice_;
  double best_ = -1.0;
  long long evaluated_ = 0;
};

}  // namespace

double exact_success_probability(const GameConfig& config, const PolicySpec<double>& policy) {
  check_matches(config, policy);
  return exact_success_probability(policy);
}

double exact_expected_tau(const GameConfig& config, const PolicySpec<double>& policy) {
  check_matches(config, policy);
  return exact_expected_tau(policy);
}

ScanReport optimality_scan(const GameConfig& config, double grid_step,
                           long long policy_budget) {
  config.validate();
  if (config.n_applicants > 8) throw InvalidInstance("optimality scan supports N <= 8");
  if (!(grid_step > 0.0 && grid_step <= 0.25)) {
    throw InvalidInstance("grid_step must lie in (0, 0.25]");
  }

  std::vector<StageOption> options;
  for (double q : acceptance_grid(config.cost, grid_step)) {
    options.push_back({false, q});
    // With c > 0 a learning stage that never accepts gets no completions
    // and coincides with the non-learning stage that never accepts.
    if (q > 0.0 || config.cost == 0.0) options.push_back({true, q});
  }
  const double total = std::pow(double(options.size()), config.n_applicants);
  if (total > double(policy_budget)) {
    throw InvalidInstance("scan of " + std::to_string(total) +
                          " policies exceeds the budget of " + std::to_string(policy_budget));
  }

  Scanner scanner(config, options);
  scanner.run();

  ScanReport report;
  report.n_applicants = config.n_applicants;
  report.cost = config.cost;
  report.grid_step = grid_step;
  report.policies_evaluated = scanner.evaluated();
  report.best_success = scanner.best();
  report.best_policy.cost = config.cost;
  for (const StageOption& o : scanner.best_choice()) {
    report.best_policy.accept.push_back(o.accept);
    report.best_policy.learning.push_back(o.learning);
  }
  report.equilibrium_success = exact_success_probability(equilibrium_spec(config));
  report.dp_success = solve_values<double>(config).success_probability;
  constexpr double kTolerance = 1e-12;
  report.no_policy_beats_equilibrium = report.best_success <= report.dp_success + kTolerance;
  report.equilibrium_attains_max =
      std::abs(report.equilibrium_success - report.best_success) <= kTolerance;
  return report;
}

FullLearningAudit full_learning_audit(const GameConfig& config) {
  return full_learning_audit(config, full_learning_profile(config));
}

FullLearningAudit full_learning_audit(const GameConfig& config, const StrategyProfile& profile) {
  detail::check_oracle_size(config.n_applicants);
  profile.validate(config);
  const int n_total = config.n_applicants;
  std::vector<int> ranks(static_cast<std::size_t>(n_total));
  std::iota(ranks.begin(), ranks.end(), 1);
  do {
    double reach = 1.0;
    int theta_max = 0;
    int output_max = 0;
    for (int n = 1; n <= n_total && reach > 0.0; ++n) {
      const int rank = ranks[static_cast<std::size_t>(n - 1)];
      const int action = applicant_action(profile, n, rank, output_max);
      const int output = action * rank;
      theta_max = std::max(theta_max, rank);
      if (theta_max != std::max(output_max, output)) {
        return {false, ranks, n};
      }
      reach *= 1.0 - profile.admin_acceptance(n, output > output_max, output > 0);
      output_max = std::max(output_max, output);
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return {};
}

}  // namespace secretary
