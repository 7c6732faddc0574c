#pragma once

#include <span>
#include <vector>

#include "secretary/game_config.hpp"

namespace secretary {

/// How applicant n chooses between declining and completing the interview.
enum class ApplicantRule {
  best_response,    // complete iff ability beats past outputs and that pays
  always_decline,   // no learning at this stage
  always_complete,
};

/// Commitment made for one stage.
///
/// The administrator accepts a strictly new positive output maximum with
/// probability record_accept and anything else (non-records, zero outputs,
/// ties with the running maximum) with probability other_accept.
struct StageRule {
  double record_accept = 0.0;
  double other_accept = 0.0;
  ApplicantRule applicant = ApplicantRule::best_response;

  bool expects_completion() const { return applicant != ApplicantRule::always_decline; }
};

/// Administrator commitment plus applicant strategies, stage by stage.
/// Stages are 1-based in the accessors.
struct StrategyProfile {
  double cost = 0.0;
  std::vector<StageRule> stages;

  int n_stages() const { return static_cast<int>(stages.size()); }
  const StageRule& stage(int n) const { return stages.at(static_cast<std::size_t>(n - 1)); }
  StageRule& stage(int n) { return stages.at(static_cast<std::size_t>(n - 1)); }

  double admin_acceptance(int n, bool new_strict_maximum, bool output_positive) const {
    const StageRule& rule = stage(n);
    return new_strict_maximum && output_positive ? rule.record_accept : rule.other_accept;
  }

  /// True when every stage expects completion and never accepts non-records.
  bool is_full_learning() const;

  void validate(const GameConfig& config) const;
};

/// Applicant n's action (1 = complete, 0 = decline) given the running
/// maximum of earlier outputs (0 before anyone was interviewed).
int applicant_action(const StrategyProfile& profile, int stage, double ability,
                     double past_output_max);

/// The unique full-learning equilibrium profile.
StrategyProfile full_learning_profile(const GameConfig& config);

/// Everybody declines; the administrator hires applicant n with
/// unconditional probability accept_distribution[n-1] (entries sum to 1).
StrategyProfile no_learning_profile(const GameConfig& config,
                                    std::span<const double> accept_distribution);

/// Ignore applicant 1 (declines, rejected), then play the full-learning
/// equilibrium of the remaining N-1 applicants.
StrategyProfile ignore_first_profile(const GameConfig& config);

/// Learning stages accept records with record_accept[n-1] and reject
/// everything else; non-learning stages accept blindly with that probability.
StrategyProfile mixed_profile(const GameConfig& config,
                              std::span<const double> record_accept,
                              const std::vector<bool>& learning);

}  // namespace secretary
