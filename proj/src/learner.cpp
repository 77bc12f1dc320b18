#include "woftrl/learner.hpp"

#include <cmath>

namespace woftrl {

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kGftrl ? "gftrl" : "gmd";
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "gftrl") return Algorithm::kGftrl;
  if (text == "gmd") return Algorithm::kGmd;
  throw ConfigError("unknown algorithm '" + text + "' (expected gftrl|gmd)");
}

void LearnerConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be finite and > 0");
  if (delay < 0) throw ConfigError("delay m must be >= 0");
  if (weight < 0) throw ConfigError("weight n must be >= 0");
  regularizer.validate();
  if (algorithm == Algorithm::kGmd &&
      (regularizer.kind != RegularizerKind::kEntropic || regularizer.domain != Domain::kSimplex)) {
    throw ConfigError("gmd requires the entropic regularizer on the simplex");
  }
  if (init) {
    if (init->size() != regularizer.dim) {
      throw DimensionError("init has length " + std::to_string(init->size()) + ", expected " +
                           std::to_string(regularizer.dim));
    }
    if (!init->allFinite()) throw NumericError("init has non-finite entries");
    if (regularizer.domain == Domain::kSimplex && !on_simplex(*init)) {
      throw DomainError("init must lie on the simplex");
    }
  }
}

DelayBuffer::DelayBuffer(int dim, int capacity)
    : ring_(static_cast<size_t>(capacity), Vector::Zero(dim)), zero_(Vector::Zero(dim)) {
  if (capacity < 1) throw ConfigError("delay buffer capacity must be >= 1");
}

void DelayBuffer::push(int round, const Vector& u) {
  if (round != newest_ + 1) {
    throw PreconditionError("delay buffer expects round " + std::to_string(newest_ + 1) +
                            ", got " + std::to_string(round));
  }
  if (u.size() != zero_.size()) throw DimensionError("gradient length mismatch");
  ring_[static_cast<size_t>(round) % ring_.size()] = u;
  newest_ = round;
}

const Vector& DelayBuffer::at(int round) const {
  if (round <= 0) return zero_;
  if (round > newest_ || round <= newest_ - capacity()) {
    throw PreconditionError("round " + std::to_string(round) + " is outside the buffer window");
  }
  return ring_[static_cast<size_t>(round) % ring_.size()];
}

Learner::Learner(LearnerConfig cfg)
    : cfg_(std::move(cfg)), buffer_(cfg_.regularizer.dim, cfg_.delay + 2) {
  cfg_.validate();
  const int dim = cfg_.regularizer.dim;
  cumulative_ = Vector::Zero(dim);
  prediction_ = Vector::Zero(dim);
  if (cfg_.init) {
    seed_ = dual_point(cfg_.regularizer, *cfg_.init);
    strategy_ = *cfg_.init;
  } else {
    seed_ = Vector::Zero(dim);
    strategy_ = mirror_argmax(cfg_.regularizer, cfg_.eta, Vector::Zero(dim));
  }
  if (cfg_.algorithm == Algorithm::kGmd) {
    if ((strategy_.array() <= 0.0).any()) throw DomainError("gmd anchor must be strictly positive");
    anchor_ = strategy_;
  }
}

void Learner::observe(int t, const Vector& u) {
  if (t != round_ + 1) {
    throw PreconditionError("learner expects round " + std::to_string(round_ + 1));
  }
  buffer_.push(t, u);
  round_ = t;
  const Vector& newest = buffer_.at(t - cfg_.delay);
  strategy_ = cfg_.algorithm == Algorithm::kGftrl ? gftrl_step(newest) : gmd_step(newest);
}

Vector Learner::gftrl_step(const Vector& newest) {
  cumulative_ += newest;
  prediction_ = cumulative_ + static_cast<double>(cfg_.weight) * newest;
  if (cfg_.init) {
    return mirror_argmax(cfg_.regularizer, cfg_.eta, prediction_ + seed_ / cfg_.eta);
  }
  return mirror_argmax(cfg_.regularizer, cfg_.eta, prediction_);
}

namespace {

// x' proportional to x * exp(scaled), evaluated in the log domain.
Vector reweight(const Vector& x, const Vector& scaled) {
  Vector logits = x.array().log().matrix() + scaled;
  Vector e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

}  // namespace

Vector Learner::gmd_step(const Vector& newest) {
  if ((anchor_.array() <= 0.0).any()) throw DomainError("gmd anchor lost all mass on an action");
  anchor_ = reweight(anchor_, cfg_.eta * newest);
  if ((anchor_.array() <= 0.0).any()) throw DomainError("gmd anchor lost all mass on an action");
  return reweight(anchor_, cfg_.eta * static_cast<double>(cfg_.weight) * newest);
}

Profile RunTrace::strategy_at(int t) const {
  Profile p;
  for (const auto& m : strategies) p.push_back(m.col(t - 1));
  return p;
}

Profile RunTrace::gradient_at(int t) const {
  Profile p;
  for (const auto& m : gradients) p.push_back(m.col(t - 1));
  return p;
}

std::vector<LearnerConfig> uniform_configs(const GameSpec& game, const LearnerConfig& base) {
  std::vector<LearnerConfig> cfgs;
  for (int count : game.action_counts()) {
    LearnerConfig c = base;
    c.regularizer.dim = count;
    cfgs.push_back(c);
  }
  return cfgs;
}

RunTrace run_episode(const GameSpec& game, const std::vector<LearnerConfig>& cfgs, int horizon,
                     const std::optional<Profile>& init) {
  if (horizon <= 0) throw ConfigError("T must be >= 1");
  const int n = game.num_players();
  if (static_cast<int>(cfgs.size()) != n) {
    throw ConfigError("need one learner config per player");
  }
  if (init && static_cast<int>(init->size()) != n) {
    throw DimensionError("init profile has the wrong number of players");
  }
  std::vector<Learner> learners;
  learners.reserve(n);
  for (int i = 0; i < n; ++i) {
    LearnerConfig c = cfgs[i];
    if (c.regularizer.dim != game.action_counts()[i]) {
      throw DimensionError("player " + std::to_string(i) + " regularizer dim does not match game");
    }
    if (c.regularizer.domain != cfgs.front().regularizer.domain) {
      throw ConfigError("all players must share one domain");
    }
    if (init) c.init = (*init)[i];
    learners.emplace_back(std::move(c));
  }

  RunTrace trace;
  trace.game_name = game.name();
  trace.horizon = horizon;
  for (int i = 0; i < n; ++i) {
    trace.configs.push_back(learners[i].config());
    trace.strategies.emplace_back(game.action_counts()[i], horizon);
    trace.gradients.emplace_back(game.action_counts()[i], horizon);
  }

  Profile x(n);
  for (int t = 1; t <= horizon; ++t) {
    for (int i = 0; i < n; ++i) x[i] = learners[i].strategy();
    const Profile u = game.gradient(x);
    for (int i = 0; i < n; ++i) {
      trace.strategies[i].col(t - 1) = x[i];
      trace.gradients[i].col(t - 1) = u[i];
      learners[i].observe(t, u[i]);
    }
  }
  return trace;
}

}  // namespace woftrl
