#include "woftrl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace woftrl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return value;
}

Vector parse_vector(const std::string& text) {
  const auto parts = split(text, ',');
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (size_t k = 0; k < parts.size(); ++k) v[static_cast<Eigen::Index>(k)] = parse_real(parts[k], "init");
  return v;
}

}  // namespace

std::string to_string(EtaRule rule) {
  return rule == EtaRule::kConstant ? "constant" : "inv_sqrt_T";
}

EtaRule parse_eta_rule(const std::string& text) {
  if (text == "constant") return EtaRule::kConstant;
  if (text == "inv_sqrt_T") return EtaRule::kInvSqrtT;
  throw ConfigError("key 'eta_rule': expected constant|inv_sqrt_T, got '" + text + "'");
}

double ExperimentConfig::eta_for(int horizon_t) const {
  if (eta_rule == EtaRule::kConstant) return eta;
  return eta_scale / std::sqrt(static_cast<double>(horizon_t));
}

void ExperimentConfig::validate() const {
  if (horizon < 1) throw ConfigError("key 'T': must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("key 'eta': must be finite and > 0");
  if (!(eta_scale > 0.0) || !std::isfinite(eta_scale)) {
    throw ConfigError("key 'eta_scale': must be finite and > 0");
  }
  if (m < 0) throw ConfigError("key 'm': must be >= 0");
  if (n < 0) throw ConfigError("key 'n': must be >= 0");
  if (m_range.empty()) throw ConfigError("key 'm_range': must not be empty");
  if (n_range.empty()) throw ConfigError("key 'n_range': must not be empty");
  for (int v : m_range) {
    if (v < 0) throw ConfigError("key 'm_range': entries must be >= 0");
  }
  for (int v : n_range) {
    if (v < 0) throw ConfigError("key 'n_range': entries must be >= 0");
  }
  for (int v : t_list) {
    if (v < 1) throw ConfigError("key 'T_list': entries must be >= 1");
  }
  RegularizerSpec reg{regularizer, domain, 2};
  reg.validate();
}

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"game", "matching_pennies | sato | weighted_rps"},
      {"game_file", "path to a custom bimatrix game (overrides game)"},
      {"regularizer", "euclidean | entropic"},
      {"domain", "simplex | unconstrained"},
      {"algorithm", "gftrl | gmd"},
      {"T", "horizon (accepts 1e5 or 10^4.5)"},
      {"eta", "learning rate for eta_rule = constant"},
      {"eta_rule", "constant | inv_sqrt_T"},
      {"eta_scale", "c in eta = c / sqrt(T) under inv_sqrt_T"},
      {"m", "time delay"},
      {"n", "optimistic weight"},
      {"m_range", "delays to sweep, a:b or a,b,c"},
      {"n_range", "weights to sweep, a:b or a,b,c"},
      {"T_list", "horizons for the scaling study"},
      {"init", "default | uniform | a,b,c | a,b;c,d | random"},
      {"seed", "seed for init = random"},
      {"out", "output CSV path"},
  };
  return keys;
}

std::vector<int> parse_int_list(const std::string& text) {
  const std::string s = trim(text);
  std::vector<int> out;
  if (const auto colon = s.find(':'); colon != std::string::npos) {
    const int a = parse_int(s.substr(0, colon), "range");
    const int b = parse_int(s.substr(colon + 1), "range");
    if (b < a) throw ConfigError("range '" + s + "' is empty");
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, "list"));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

int parse_count(const std::string& text) {
  const std::string s = trim(text);
  double value = 0.0;
  if (const auto caret = s.find('^'); caret != std::string::npos) {
    value = std::pow(parse_real(s.substr(0, caret), "count"), parse_real(s.substr(caret + 1), "count"));
  } else {
    value = parse_real(s, "count");
  }
  if (!std::isfinite(value) || value < 0.0 || value > 2e9) {
    throw ConfigError("count '" + s + "' is out of range");
  }
  return static_cast<int>(std::llround(value));
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  try {
    if (key == "game") {
      cfg.game = value;
    } else if (key == "game_file") {
      cfg.game_file = value;
    } else if (key == "regularizer") {
      cfg.regularizer = parse_regularizer(value);
    } else if (key == "domain") {
      cfg.domain = parse_domain(value);
    } else if (key == "algorithm") {
      cfg.algorithm = parse_algorithm(value);
    } else if (key == "T") {
      cfg.horizon = parse_count(value);
    } else if (key == "eta") {
      cfg.eta = parse_real(value, key);
    } else if (key == "eta_rule") {
      cfg.eta_rule = parse_eta_rule(value);
    } else if (key == "eta_scale") {
      cfg.eta_scale = parse_real(value, key);
    } else if (key == "m") {
      cfg.m = parse_int(value, key);
    } else if (key == "n") {
      cfg.n = parse_int(value, key);
    } else if (key == "m_range") {
      cfg.m_range = parse_int_list(value);
    } else if (key == "n_range") {
      cfg.n_range = parse_int_list(value);
    } else if (key == "T_list") {
      cfg.t_list.clear();
      for (const auto& part : split(value, ',')) cfg.t_list.push_back(parse_count(part));
    } else if (key == "init") {
      cfg.init = value;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_count(value));
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.find("'" + key + "'") != std::string::npos) throw;
    throw ConfigError("key '" + key + "': " + what);
  }
}

void apply_config_stream(ExperimentConfig& cfg, std::istream& in, const std::string& origin) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'");
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config_stream(cfg, in, path);
}

std::pair<std::string, std::string> split_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + text + "' is not key=value");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

GameSpec resolve_game(const ExperimentConfig& cfg) {
  if (!cfg.game_file.empty()) return load_bimatrix_file(cfg.game_file);
  return game_by_name(cfg.game);
}

std::optional<Profile> resolve_init(const ExperimentConfig& cfg, const GameSpec& game) {
  const std::string spec = trim(cfg.init);
  const auto& counts = game.action_counts();
  const int players = game.num_players();
  if (spec.empty() || spec == "default") return std::nullopt;
  Profile profile;
  if (spec == "uniform") {
    for (int d : counts) profile.push_back(Vector::Constant(d, 1.0 / d));
    return profile;
  }
  if (spec == "random") {
    if (cfg.domain != Domain::kSimplex) throw ConfigError("key 'init': random needs domain = simplex");
    std::mt19937_64 rng(cfg.seed);
    std::exponential_distribution<double> draw(1.0);
    for (int d : counts) {
      Vector v(d);
      for (int j = 0; j < d; ++j) v[j] = draw(rng);
      profile.push_back(v / v.sum());
    }
    return profile;
  }
  const auto blocks = split(spec, ';');
  if (blocks.size() == 1) {
    const Vector v = parse_vector(blocks[0]);
    for (int i = 0; i < players; ++i) profile.push_back(v);
  } else {
    if (static_cast<int>(blocks.size()) != players) {
      throw ConfigError("key 'init': expected " + std::to_string(players) + " ';'-separated vectors");
    }
    for (const auto& b : blocks) profile.push_back(parse_vector(b));
  }
  for (int i = 0; i < players; ++i) {
    if (profile[i].size() != counts[i]) {
      throw ConfigError("key 'init': player " + std::to_string(i + 1) + " needs " +
                        std::to_string(counts[i]) + " entries");
    }
    if (cfg.domain == Domain::kSimplex && !on_simplex(profile[i])) {
      throw ConfigError("key 'init': player " + std::to_string(i + 1) + " is not on the simplex");
    }
  }
  return profile;
}

std::vector<LearnerConfig> learner_configs(const ExperimentConfig& cfg, const GameSpec& game,
                                           int m, int n, double eta) {
  LearnerConfig base;
  base.eta = eta;
  base.delay = m;
  base.weight = n;
  base.algorithm = cfg.algorithm;
  base.regularizer.kind = cfg.regularizer;
  base.regularizer.domain = cfg.domain;
  auto cfgs = uniform_configs(game, base);
  for (auto& c : cfgs) c.validate();
  return cfgs;
}

}  // namespace woftrl
