#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "woftrl/game.hpp"
#include "woftrl/learner.hpp"
#include "woftrl/regularizer.hpp"

namespace woftrl {

enum class EtaRule { kConstant, kInvSqrtT };

std::string to_string(EtaRule rule);
EtaRule parse_eta_rule(const std::string& text);

/// Everything one CLI invocation needs. Built from command defaults, then a
/// config file, then --set overrides, in that order of increasing precedence.
struct ExperimentConfig {
  std::string game = "matching_pennies";
  std::string game_file;  // custom bimatrix file; overrides `game` when set
  RegularizerKind regularizer = RegularizerKind::kEuclidean;
  Domain domain = Domain::kSimplex;
  Algorithm algorithm = Algorithm::kGftrl;
  int horizon = 10000;
  double eta = 0.01;
  EtaRule eta_rule = EtaRule::kConstant;
  double eta_scale = 1.0;  // eta = eta_scale / sqrt(T) under inv_sqrt_T
  int m = 0;
  int n = 1;
  std::vector<int> m_range{0};
  std::vector<int> n_range{1};
  std::vector<int> t_list;
  std::string init = "default";
  std::uint64_t seed = 0;
  std::string out;

  /// eta for horizon T under the configured rule.
  double eta_for(int horizon_t) const;
  void validate() const;
};

/// Keys accepted in config files and --set, with one-line descriptions.
const std::vector<std::pair<std::string, std::string>>& config_keys();

/// Applies one key/value pair. Throws ConfigError naming the key on unknown
/// keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads "key = value" lines. '#' starts a comment; blank lines are skipped.
/// Errors carry the line number.
void apply_config_stream(ExperimentConfig& cfg, std::istream& in, const std::string& origin);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// Splits "key=value". Throws ConfigError if there is no '='.
std::pair<std::string, std::string> split_override(const std::string& text);

/// "a:b" (inclusive) or "a,b,c".
std::vector<int> parse_int_list(const std::string& text);

/// Integer that may be written as 1e5 or 10^4.5 (rounded to nearest).
int parse_count(const std::string& text);

/// Game named by the config (built-in or loaded from game_file).
GameSpec resolve_game(const ExperimentConfig& cfg);

/// x^1 for every player, or nullopt for the regularizer's default start.
///
///   default        mirror_argmax(reg, eta, 0)
///   uniform        uniform on every simplex (the origin's image when unconstrained)
///   a,b,c          the same vector for every player
///   a,b;c,d        one vector per player, separated by ';'
///   random         seeded Dirichlet(1) draw per player (simplex only)
std::optional<Profile> resolve_init(const ExperimentConfig& cfg, const GameSpec& game);

/// Per-player learner settings for a cell (m, n, eta).
std::vector<LearnerConfig> learner_configs(const ExperimentConfig& cfg, const GameSpec& game,
                                           int m, int n, double eta);

}  // namespace woftrl
