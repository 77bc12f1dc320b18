#include "woftrl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace woftrl {

namespace {

int resolve_rounds(const RunTrace& trace, int rounds) {
  if (trace.horizon <= 0) throw PreconditionError("trace is empty");
  if (rounds < 0) return trace.horizon;
  if (rounds == 0 || rounds > trace.horizon) {
    throw PreconditionError("rounds must be in [1, " + std::to_string(trace.horizon) + "]");
  }
  return rounds;
}

}  // namespace

RegretLedger total_regret(const RunTrace& trace, int rounds) {
  rounds = resolve_rounds(trace, rounds);
  RegretLedger ledger;
  const bool simplex = trace.domain() == Domain::kSimplex;
  for (int i = 0; i < trace.num_players(); ++i) {
    const auto xs = trace.strategies[i].leftCols(rounds);
    const auto us = trace.gradients[i].leftCols(rounds);
    const Vector cumulative = us.rowwise().sum();
    const double realized = (xs.array() * us.array()).sum();
    double best = 0.0;
    if (simplex) {
      best = cumulative.maxCoeff();
    } else {
      const double radius = xs.cwiseAbs().colwise().sum().mean();
      best = radius * cumulative.cwiseAbs().maxCoeff();
    }
    ledger.best.push_back(best);
    ledger.realized.push_back(realized);
    ledger.total += best - realized;
  }
  return ledger;
}

std::vector<double> running_regret(const RunTrace& trace) {
  resolve_rounds(trace, -1);
  const int n = trace.num_players();
  const bool simplex = trace.domain() == Domain::kSimplex;
  std::vector<Vector> cumulative;
  std::vector<double> realized(n, 0.0), l1_sum(n, 0.0);
  for (int i = 0; i < n; ++i) cumulative.push_back(Vector::Zero(trace.strategies[i].rows()));
  std::vector<double> out;
  out.reserve(trace.horizon);
  for (int t = 1; t <= trace.horizon; ++t) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto x = trace.strategies[i].col(t - 1);
      const auto u = trace.gradients[i].col(t - 1);
      cumulative[i] += u;
      realized[i] += x.dot(u);
      double best;
      if (simplex) {
        best = cumulative[i].maxCoeff();
      } else {
        l1_sum[i] += x.cwiseAbs().sum();
        best = (l1_sum[i] / t) * cumulative[i].cwiseAbs().maxCoeff();
      }
      total += best - realized[i];
    }
    out.push_back(total);
  }
  return out;
}

std::vector<double> payoff_sum_series(const RunTrace& trace) {
  std::vector<double> out(trace.horizon, 0.0);
  for (int i = 0; i < trace.num_players(); ++i) {
    const Eigen::RowVectorXd per_round =
        (trace.strategies[i].array() * trace.gradients[i].array()).colwise().sum();
    for (int t = 0; t < trace.horizon; ++t) out[t] += per_round[t];
  }
  return out;
}

std::vector<double> distance_to_nash(const RunTrace& trace, const Profile& nash) {
  if (static_cast<int>(nash.size()) != trace.num_players()) {
    throw DimensionError("equilibrium has the wrong number of players");
  }
  std::vector<double> out(trace.horizon, 0.0);
  for (int i = 0; i < trace.num_players(); ++i) {
    if (nash[i].size() != trace.strategies[i].rows()) throw DimensionError("equilibrium shape");
    const Eigen::RowVectorXd sq = (trace.strategies[i].colwise() - nash[i]).colwise().squaredNorm();
    for (int t = 0; t < trace.horizon; ++t) out[t] += sq[t];
  }
  for (double& v : out) v = std::sqrt(v);
  return out;
}

std::vector<double> distance_to_nash_mp_unconstrained(const RunTrace& trace) {
  const auto deltas = mp_delta_series(trace);
  std::vector<double> out;
  out.reserve(deltas.size());
  for (const auto& [d1, d2] : deltas) out.push_back(std::sqrt(0.5 * (d1 * d1 + d2 * d2)));
  return out;
}

std::vector<double> distance_to_nash(const RunTrace& trace, const GameSpec& game) {
  if (trace.domain() == Domain::kUnconstrained) {
    if (game.name() == "matching_pennies") return distance_to_nash_mp_unconstrained(trace);
    throw UnsupportedMetricError("no equilibrium set known for unconstrained " + game.name());
  }
  if (!game.nash_reference()) {
    throw UnsupportedMetricError("game '" + game.name() + "' has no reference equilibrium");
  }
  return distance_to_nash(trace, *game.nash_reference());
}

std::vector<double> running_min(const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) {
    best = std::min(best, v);
    out.push_back(best);
  }
  return out;
}

double delay_lambda(int m) {
  if (m < 0) throw ConfigError("delay m must be >= 0");
  return 0.5 * static_cast<double>(m + 1) * static_cast<double>(m + 2);
}

std::vector<RvuReport> rvu_check(const RunTrace& trace, const std::vector<int>& checkpoints) {
  resolve_rounds(trace, -1);
  const LearnerConfig& first = trace.configs.front();
  for (const auto& c : trace.configs) {
    if (c.weight != c.delay + 1) {
      throw PreconditionError("RVU constants are stated for n = m + 1 only (got m = " +
                              std::to_string(c.delay) + ", n = " + std::to_string(c.weight) + ")");
    }
    if (c.delay != first.delay || c.eta != first.eta) {
      throw PreconditionError("RVU check needs a shared eta and delay");
    }
    if (c.regularizer.domain != Domain::kSimplex) {
      throw PreconditionError("RVU check needs a bounded (simplex) domain");
    }
  }
  const int n_players = trace.num_players();
  const double eta = first.eta;
  const double lambda = delay_lambda(first.delay);

  double width_sum = 0.0, plain_sum = 0.0;
  for (int i = 0; i < n_players; ++i) {
    const RegularizerSpec& reg = trace.configs[i].regularizer;
    width_sum += anchored_h_range(reg, trace.strategies[i].col(0)).width();
    plain_sum += h_range(reg).width();
  }

  std::vector<int> sorted = checkpoints;
  std::sort(sorted.begin(), sorted.end());
  for (int c : sorted) resolve_rounds(trace, c);

  const std::vector<double> regret = running_regret(trace);
  std::vector<RvuReport> reports;
  double sum_du2 = 0.0, sum_dx2 = 0.0;
  size_t next = 0;
  for (int t = 1; t <= trace.horizon && next < sorted.size(); ++t) {
    for (int i = 0; i < n_players; ++i) {
      const auto u = trace.gradients[i].col(t - 1);
      const auto x = trace.strategies[i].col(t - 1);
      if (t == 1) {
        sum_du2 += u.squaredNorm();
      } else {
        sum_du2 += (u - trace.gradients[i].col(t - 2)).squaredNorm();
        sum_dx2 += (x - trace.strategies[i].col(t - 2)).squaredNorm();
      }
    }
    while (next < sorted.size() && sorted[next] == t) {
      RvuReport r;
      r.rounds = t;
      r.lambda = lambda;
      r.h_width = width_sum / n_players;
      r.h_max_plain = plain_sum / n_players;
      r.alpha = width_sum / eta;
      r.alpha_plain = plain_sum / eta;
      r.beta = lambda * lambda * eta;
      r.gamma = 1.0 / (8.0 * eta);
      r.sum_du2 = sum_du2;
      r.sum_dx2 = sum_dx2;
      r.lhs = regret[t - 1];
      r.rhs = r.alpha + r.beta * sum_du2 - r.gamma * sum_dx2;
      r.holds = r.lhs <= r.rhs + 1e-9;
      reports.push_back(r);
      ++next;
    }
  }
  return reports;
}

RvuReport rvu_check(const RunTrace& trace) { return rvu_check(trace, {trace.horizon}).front(); }

double corollary4_eta(int m, double lipschitz) {
  if (!(lipschitz > 0.0)) throw ConfigError("Lipschitz constant must be > 0");
  return 1.0 / (std::sqrt(8.0) * delay_lambda(m) * lipschitz);
}

double corollary4_bound(int m, int num_players, double h) {
  return std::sqrt(8.0) * num_players * delay_lambda(m) * h;
}

double corollary4_bound_with_lipschitz(int m, int num_players, double h, double lipschitz) {
  return num_players * h / corollary4_eta(m, lipschitz);
}

std::vector<std::pair<double, double>> mp_delta_series(const RunTrace& trace) {
  if (trace.num_players() != 2 || trace.strategies[0].rows() != 2 ||
      trace.strategies[1].rows() != 2) {
    throw DimensionError("Delta x series needs a two-player, two-action trace");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(trace.horizon);
  for (int t = 0; t < trace.horizon; ++t) {
    const double d1 = trace.strategies[0](0, t) - trace.strategies[0](1, t);
    const double d2 = trace.strategies[1](0, t) - trace.strategies[1](1, t);
    out.emplace_back(d1, d2);
  }
  return out;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw PreconditionError("line fit needs at least two paired points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mx, dy = ys[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw PreconditionError("line fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

RateEstimate radius_rate_estimate(const std::vector<std::pair<double, double>>& deltas,
                                  double eta, int m, int n) {
  if (!(eta > 0.0)) throw ConfigError("eta must be > 0");
  const size_t burn_in = static_cast<size_t>(10 * (m + 1));
  std::vector<double> ts, logs;
  for (size_t k = burn_in; k < deltas.size(); ++k) {
    const double r = std::hypot(deltas[k].first, deltas[k].second);
    if (!(r >= 1e-300) || !std::isfinite(r)) break;
    ts.push_back(static_cast<double>(k + 1));
    logs.push_back(std::log(r));
  }
  const LinearFit fit = fit_line(ts, logs);
  RateEstimate est;
  est.alpha_hat = fit.slope / (4.0 * eta * eta);
  est.alpha_theory = m - n + 0.5;
  est.r2 = fit.r2;
  est.points = static_cast<int>(ts.size());
  return est;
}

}  // namespace woftrl
