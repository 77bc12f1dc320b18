#pragma once

#include <optional>
#include <string>
#include <vector>

#include "woftrl/game.hpp"
#include "woftrl/regularizer.hpp"
#include "woftrl/types.hpp"

namespace woftrl {

enum class Algorithm { kGftrl, kGmd };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& text);

/// Per-player settings of delayed generalized FTRL.
///
/// weight n selects the prediction term n * u^{t-m}: 0 is vanilla FTRL, 1 is
/// optimistic FTRL, larger values are weighted-optimistic FTRL.
struct LearnerConfig {
  double eta = 0.01;
  int delay = 0;
  int weight = 1;
  Algorithm algorithm = Algorithm::kGftrl;
  RegularizerSpec regularizer;
  /// x^1. Defaults to mirror_argmax(reg, eta, 0): uniform, or the origin when
  /// unconstrained.
  std::optional<Vector> init;

  void validate() const;
};

/// Gradients indexed by absolute round, read back with a fixed delay.
///
/// Rounds s <= 0 read as the zero vector. Holds the newest `capacity` rounds.
class DelayBuffer {
 public:
  DelayBuffer(int dim, int capacity);

  /// Appends u^round. Rounds must be pushed consecutively starting at 1.
  void push(int round, const Vector& u);
  const Vector& at(int round) const;
  int newest_round() const { return newest_; }
  int capacity() const { return static_cast<int>(ring_.size()); }

 private:
  std::vector<Vector> ring_;
  Vector zero_;
  int newest_ = 0;
};

/// One player's delayed-feedback learner.
///
/// After observe(t, u^t) the learner holds x^{t+1}. Only gradients u^s with
/// s <= t - m enter that decision:
///
///   x^{t+1} = argmax eta <x, sum_{s=1}^{t-m} u^s + n u^{t-m}> - h(x).
///
/// A custom x^1 is kept by seeding the dual sum with grad h(x^1) / eta, which
/// makes the iteration FTRL on the Bregman divergence anchored at x^1.
///
/// The GMD twin keeps an anchor xhat and applies two exponential reweightings
/// per round; for the entropic regularizer it reproduces GFTRL exactly.
class Learner {
 public:
  explicit Learner(LearnerConfig cfg);

  const LearnerConfig& config() const { return cfg_; }
  const Vector& strategy() const { return strategy_; }
  int round() const { return round_; }

  /// Records u^t and advances to x^{t+1}.
  void observe(int t, const Vector& u);

  /// sum_{s=1}^{t-m} u^s + n u^{t-m} consumed by the last GFTRL step, without
  /// the start-point seed.
  const Vector& last_prediction() const { return prediction_; }
  /// GMD anchor xhat^{t+1}. Empty for GFTRL.
  const Vector& anchor() const { return anchor_; }

 private:
  Vector gftrl_step(const Vector& newest);
  Vector gmd_step(const Vector& newest);

  LearnerConfig cfg_;
  DelayBuffer buffer_;
  Vector cumulative_;  // sum of observable gradients, unscaled
  Vector seed_;        // grad h(x^1); zero for the default start
  Vector prediction_;
  Vector anchor_;
  Vector strategy_;
  int round_ = 0;
};

/// Full record of one episode. Column t-1 of strategies[i] is x_i^t.
struct RunTrace {
  std::string game_name;
  std::vector<LearnerConfig> configs;
  int horizon = 0;
  std::vector<Matrix> strategies;
  std::vector<Matrix> gradients;

  int num_players() const { return static_cast<int>(strategies.size()); }
  Profile strategy_at(int t) const;
  Profile gradient_at(int t) const;
  Domain domain() const { return configs.front().regularizer.domain; }
};

/// Plays T rounds: every player commits x^t, u^t = gradient(x^t) is revealed to
/// all, and each learner moves to x^{t+1} from its delayed view.
///
/// `init` overrides each config's start point when given. Throws ConfigError
/// for T <= 0 or inconsistent configs. Deterministic.
RunTrace run_episode(const GameSpec& game, const std::vector<LearnerConfig>& cfgs, int horizon,
                     const std::optional<Profile>& init = std::nullopt);

/// Same config for every player, with dim taken from the game.
std::vector<LearnerConfig> uniform_configs(const GameSpec& game, const LearnerConfig& base);

}  // namespace woftrl
