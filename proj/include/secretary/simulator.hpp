#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secretary/game_config.hpp"
#include "secretary/profile.hpp"
#include "secretary/rng.hpp"

namespace secretary {

/// Private abilities theta_1..theta_N: positive and pairwise distinct.
struct AbilityDraw {
  std::vector<double> abilities;

  int best_index() const;  // 1-based argmax
};

/// Abilities whose rank order is uniform over all N! permutations.
AbilityDraw sample_abilities(int n_applicants, CounterRng& rng);

/// One play of the game. Per-applicant arrays cover the interviewed
/// applicants only, i.e. they stop at the accepted index.
struct GameTranscript {
  std::vector<double> abilities;  // full draw, revealed after the game
  std::vector<int> actions;
  std::vector<double> outputs;
  std::vector<double> applicant_payoffs;
  std::optional<int> accepted_index;  // 1-based
  bool success = false;

  /// max theta = max y on every interviewed prefix.
  bool full_learning_holds() const;
};

GameTranscript play_game(const GameConfig& config, const StrategyProfile& profile,
                         const AbilityDraw& draw, CounterRng& rng);

/// Draws abilities from rng, then plays.
GameTranscript play_game(const GameConfig& config, const StrategyProfile& profile,
                         CounterRng& rng);

struct AggregateStats {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
  double success_se = 0.0;
  double acceptance_rate = 0.0;
  double mean_tau_unconditional = 0.0;  // tau = 0 when nobody is accepted
  double tau_se = 0.0;
  double mean_tau_conditional = 0.0;    // over trials with an acceptance
  std::vector<std::int64_t> accepted_by_stage;   // index n-1
  std::vector<std::int64_t> successes_by_stage;  // accepted and globally best
};

/// Monte Carlo over independent trials; trial i uses CounterRng(seed, i).
/// Results depend only on (config, profile, trials, seed), never on threads
/// (0 picks the hardware concurrency).
AggregateStats estimate(const GameConfig& config, const StrategyProfile& profile,
                        std::int64_t trials, std::uint64_t seed, unsigned threads = 0);

struct Violation {
  int stage;
  std::string what;
};

struct AuditReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks the incentive constraints stage by stage: record acceptance at
/// least c wherever completion is expected, no acceptance of non-records
/// under learning, and applicant rules that are best responses.
AuditReport incentive_audit(const GameConfig& config, const StrategyProfile& profile);

}  // namespace secretary
