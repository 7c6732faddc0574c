#include "secretary/profile.hpp"

#include <algorithm>
#include <string>

#include "secretary/equilibrium.hpp"

namespace secretary {

bool StrategyProfile::is_full_learning() const {
  for (const auto& rule : stages) {
    if (rule.applicant != ApplicantRule::best_response || rule.other_accept != 0.0) {
      return false;
    }
  }
  return true;
}

void StrategyProfile::validate(const GameConfig& config) const {
  config.validate();
  if (n_stages() != config.n_applicants) {
    throw InvalidInstance("profile has " + std::to_string(n_stages()) +
                          " stages for " + std::to_string(config.n_applicants) +
                          " applicants");
  }
  if (cost != config.cost) throw InvalidInstance("profile cost differs from instance cost");
  for (const auto& rule : stages) {
    if (!(rule.record_accept >= 0.0 && rule.record_accept <= 1.0 &&
          rule.other_accept >= 0.0 && rule.other_accept <= 1.0)) {
      throw InvalidInstance("acceptance probabilities must lie in [0, 1]");
    }
  }
}

int applicant_action(const StrategyProfile& profile, int stage, double ability,
                     double past_output_max) {
  const StageRule& rule = profile.stage(stage);
  switch (rule.applicant) {
    case ApplicantRule::always_decline:
      return 0;
    case ApplicantRule::always_complete:
      return 1;
    case ApplicantRule::best_response:
      break;
  }
  // Completing a record pays record_accept - c; declining leaves a zero
  // output, which is never a positive record, so it pays other_accept.
  // Completing a non-record pays other_accept - c and is never better.
  return ability > past_output_max &&
                 rule.record_accept - profile.cost >= rule.other_accept
             ? 1
             : 0;
}

StrategyProfile full_learning_profile(const GameConfig& config) {
  const EquilibriumPolicy policy = equilibrium_policy(config);
  StrategyProfile profile{config.cost, {}};
  profile.stages.reserve(static_cast<std::size_t>(config.n_applicants));
  for (int n = 1; n <= config.n_applicants; ++n) {
    profile.stages.push_back(
        {policy.record_acceptance(n), EquilibriumPolicy::accept_nonrecord,
         ApplicantRule::best_response});
  }
  return profile;
}

StrategyProfile no_learning_profile(const GameConfig& config,
                                    std::span<const double> accept_distribution) {
  config.validate();
  if (static_cast<int>(accept_distribution.size()) != config.n_applicants) {
    throw InvalidInstance("acceptance distribution needs one entry per applicant");
  }
  StrategyProfile profile{config.cost, {}};
  double remaining = 1.0;
  for (double mass : accept_distribution) {
    if (mass < 0.0) throw InvalidInstance("acceptance distribution must be non-negative");
    const double conditional = remaining > 0.0 ? std::min(1.0, mass / remaining) : 1.0;
    profile.stages.push_back({conditional, conditional, ApplicantRule::always_decline});
    remaining -= mass;
  }
  return profile;
}

StrategyProfile ignore_first_profile(const GameConfig& config) {
  config.validate();
  StrategyProfile profile{config.cost, {}};
  profile.stages.push_back({0.0, 0.0, ApplicantRule::always_decline});
  if (config.n_applicants == 2) {
    profile.stages.push_back({1.0, 0.0, ApplicantRule::best_response});
    return profile;
  }
  const EquilibriumPolicy rest =
      equilibrium_policy(make_config(config.n_applicants - 1, config.cost));
  for (int n = 1; n < config.n_applicants; ++n) {
    profile.stages.push_back({rest.record_acceptance(n), 0.0, ApplicantRule::best_response});
  }
  return profile;
}

StrategyProfile mixed_profile(const GameConfig& config,
                              std::span<const double> record_accept,
                              const std::vector<bool>& learning) {
  config.validate();
  if (static_cast<int>(record_accept.size()) != config.n_applicants ||
      static_cast<int>(learning.size()) != config.n_applicants) {
    throw InvalidInstance("mixed profile needs one entry per applicant");
  }
  StrategyProfile profile{config.cost, {}};
  for (std::size_t i = 0; i < record_accept.size(); ++i) {
    if (learning[i]) {
      profile.stages.push_back({record_accept[i], 0.0, ApplicantRule::best_response});
    } else {
      profile.stages.push_back(
          {record_accept[i], record_accept[i], ApplicantRule::always_decline});
    }
  }
  profile.validate(config);
  return profile;
}

}  // namespace secretary
