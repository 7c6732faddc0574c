#pragma once

#include <stdexcept>
#include <string>

namespace secretary {

/// Thrown when an instance or argument falls outside the model's domain.
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A game instance: N applicants, each paying cost c (as a fraction of the
/// job's value) to complete an interview.
struct GameConfig {
  int n_applicants = 2;
  double cost = 0.0;

  void validate() const {
    if (n_applicants < 2) {
      throw InvalidInstance("n_applicants must be >= 2, got " +
                            std::to_string(n_applicants));
    }
    if (!(cost >= 0.0 && cost < 1.0)) {
      throw InvalidInstance("cost must lie in [0, 1), got " +
                            std::to_string(cost));
    }
  }
};

inline GameConfig make_config(int n_applicants, double cost) {
  GameConfig config{n_applicants, cost};
  config.validate();
  return config;
}

}  // namespace secretary
