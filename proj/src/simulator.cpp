#include "secretary/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace secretary {

namespace {

// Fisher-Yates over ranks 1..N, scaled into (0, 1].
void fill_abilities(std::vector<double>& abilities, int n_applicants, CounterRng& rng) {
  abilities.resize(static_cast<std::size_t>(n_applicants));
  std::iota(abilities.begin(), abilities.end(), 1.0);
  for (std::size_t i = abilities.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i + 1));
    std::swap(abilities[i], abilities[j]);
  }
  const double scale = 1.0 / n_applicants;
  for (double& a : abilities) a *= scale;
}

// Plays forward until an acceptance; observe(n, action, output, accepted) is
// called once per interviewed applicant. Returns the accepted stage.
template <typename Observer>
std::optional<int> play(const StrategyProfile& profile, const std::vector<double>& abilities,
                        CounterRng& rng, Observer&& observe) {
  double past_max = 0.0;
  const int n_total = static_cast<int>(abilities.size());
  for (int n = 1; n <= n_total; ++n) {
    const double ability = abilities[static_cast<std::size_t>(n - 1)];
    const int action = applicant_action(profile, n, ability, past_max);
    const double output = action * ability;
    const double p = profile.admin_acceptance(n, output > past_max, output > 0.0);
    const bool accepted = rng.bernoulli(p);
    observe(n, action, output, accepted);
    if (accepted) return n;
    past_max = std::max(past_max, output);
  }
  return std::nullopt;
}

bool is_best(const std::vector<double>& abilities, int n) {
  const double a = abilities[static_cast<std::size_t>(n - 1)];
  return std::all_of(abilities.begin(), abilities.end(), [a](double b) { return b <= a; });
}

struct Tally {
  std::int64_t successes = 0;
  std::int64_t acceptances = 0;
  std::uint64_t tau_sum = 0;
  std::uint64_t tau_square_sum = 0;
  std::vector<std::int64_t> accepted_by_stage;
  std::vector<std::int64_t> successes_by_stage;

  explicit Tally(int n_total)
      : accepted_by_stage(static_cast<std::size_t>(n_total), 0),
        successes_by_stage(static_cast<std::size_t>(n_total), 0) {}

  void merge(const Tally& other) {
    successes += other.successes;
    acceptances += other.acceptances;
    tau_sum += other.tau_sum;
    tau_square_sum += other.tau_square_sum;
    for (std::size_t i = 0; i < accepted_by_stage.size(); ++i) {
      accepted_by_stage[i] += other.accepted_by_stage[i];
      successes_by_stage[i] += other.successes_by_stage[i];
    }
  }
};

void run_trials(const GameConfig& config, const StrategyProfile& profile, std::uint64_t seed,
                std::int64_t begin, std::int64_t end, Tally& tally) {
  std::vector<double> abilities;
  for (std::int64_t trial = begin; trial < end; ++trial) {
    CounterRng rng(seed, static_cast<std::uint64_t>(trial));
    fill_abilities(abilities, config.n_applicants, rng);
    const auto accepted = play(profile, abilities, rng, [](int, int, double, bool) {});
    if (!accepted) continue;
    const auto tau = static_cast<std::uint64_t>(*accepted);
    const auto stage = static_cast<std::size_t>(*accepted - 1);
    ++tally.acceptances;
    ++tally.accepted_by_stage[stage];
    tally.tau_sum += tau;
    tally.tau_square_sum += tau * tau;
    if (is_best(abilities, *accepted)) {
      ++tally.successes;
      ++tally.successes_by_stage[stage];
    }
  }
}

}  // namespace

int AbilityDraw::best_index() const {
  return static_cast<int>(std::max_element(abilities.begin(), abilities.end()) -
                          abilities.begin()) +
         1;
}

AbilityDraw sample_abilities(int n_applicants, CounterRng& rng) {
  if (n_applicants < 2) throw InvalidInstance("n_applicants must be >= 2");
  AbilityDraw draw;
  fill_abilities(draw.abilities, n_applicants, rng);
  return draw;
}

bool GameTranscript::full_learning_holds() const {
  double theta_max = 0.0;
  double output_max = 0.0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    theta_max = std::max(theta_max, abilities[i]);
    output_max = std::max(output_max, outputs[i]);
    if (theta_max != output_max) return false;
  }
  return true;
}

GameTranscript play_game(const GameConfig& config, const StrategyProfile& profile,
                         const AbilityDraw& draw, CounterRng& rng) {
  profile.validate(config);
  if (static_cast<int>(draw.abilities.size()) != config.n_applicants) {
    throw InvalidInstance("ability draw size differs from the instance");
  }
  GameTranscript transcript;
  transcript.abilities = draw.abilities;
  transcript.accepted_index =
      play(profile, draw.abilities, rng, [&](int, int action, double output, bool accepted) {
        transcript.actions.push_back(action);
        transcript.outputs.push_back(output);
        double payoff = 0.0;
        if (action == 1) payoff = accepted ? 1.0 - config.cost : -config.cost;
        transcript.applicant_payoffs.push_back(payoff);
      });
  transcript.success =
      transcript.accepted_index && is_best(draw.abilities, *transcript.accepted_index);
  return transcript;
}

GameTranscript play_game(const GameConfig& config, const StrategyProfile& profile,
                         CounterRng& rng) {
  const AbilityDraw draw = sample_abilities(config.n_applicants, rng);
  return play_game(config, profile, draw, rng);
}

AggregateStats estimate(const GameConfig& config, const StrategyProfile& profile,
                        std::int64_t trials, std::uint64_t seed, unsigned threads) {
  profile.validate(config);
  if (trials < 1) throw InvalidInstance("trials must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<std::int64_t>(
      std::min<std::int64_t>(threads, trials));

  std::vector<Tally> tallies(static_cast<std::size_t>(workers), Tally(config.n_applicants));
  std::vector<std::thread> pool;
  const std::int64_t chunk = (trials + workers - 1) / workers;
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(trials, begin + chunk);
    pool.emplace_back(run_trials, std::cref(config), std::cref(profile), seed, begin, end,
                      std::ref(tallies[static_cast<std::size_t>(w)]));
  }
  for (auto& t : pool) t.join();

  // Integer tallies: the merge is exact, hence independent of the split.
  Tally total(config.n_applicants);
  for (const auto& t : tallies) total.merge(t);

  const auto n = static_cast<double>(trials);
  AggregateStats stats;
  stats.trials = trials;
  stats.seed = seed;
  stats.success_rate = static_cast<double>(total.successes) / n;
  stats.success_se = std::sqrt(stats.success_rate * (1.0 - stats.success_rate) / n);
  stats.acceptance_rate = static_cast<double>(total.acceptances) / n;
  stats.mean_tau_unconditional = static_cast<double>(total.tau_sum) / n;
  const double second_moment = static_cast<double>(total.tau_square_sum) / n;
  const double variance =
      std::max(0.0, second_moment - stats.mean_tau_unconditional * stats.mean_tau_unconditional);
  stats.tau_se = std::sqrt(variance / n);
  stats.mean_tau_conditional =
      total.acceptances > 0
          ? static_cast<double>(total.tau_sum) / static_cast<double>(total.acceptances)
          : 0.0;
  stats.accepted_by_stage = std::move(total.accepted_by_stage);
  stats.successes_by_stage = std::move(total.successes_by_stage);
  return stats;
}

AuditReport incentive_audit(const GameConfig& config, const StrategyProfile& profile) {
  profile.validate(config);
  AuditReport report;
  const double c = config.cost;
  for (int n = 1; n <= profile.n_stages(); ++n) {
    const StageRule& rule = profile.stage(n);
    auto flag = [&](std::string what) { report.violations.push_back({n, std::move(what)}); };
    if (rule.expects_completion()) {
      if (rule.record_accept < c) {
        flag("record acceptance " + std::to_string(rule.record_accept) +
             " is below the interview cost " + std::to_string(c));
      }
      if (rule.other_accept != 0.0) {
        flag("learning stage accepts non-records with positive probability");
      }
    }
    switch (rule.applicant) {
      case ApplicantRule::best_response:
        break;
      case ApplicantRule::always_decline:
        if (rule.record_accept - c > rule.other_accept) {
          flag("declining is not a best response: a record gains by completing");
        }
        break;
      case ApplicantRule::always_complete:
        if (c > 0.0) flag("completing is not a best response for a non-record applicant");
        if (rule.record_accept - c < rule.other_accept) {
          flag("completing is not a best response for a record applicant");
        }
        break;
    }
  }
  return report;
}

}  // namespace secretary
