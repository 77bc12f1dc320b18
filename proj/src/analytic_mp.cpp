#include "woftrl/analytic_mp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "woftrl/metrics.hpp"
#include "woftrl/types.hpp"

namespace woftrl {

DeltaState::DeltaState(double dx1, double dx2, int m)
    : ring_(static_cast<size_t>(m < 0 ? 1 : m + 2), {0.0, 0.0}), delay_(m) {
  if (m < 0) throw ConfigError("delay m must be >= 0");
  if (!std::isfinite(dx1) || !std::isfinite(dx2)) throw NumericError("non-finite Delta x");
  ring_[1 % ring_.size()] = {dx1, dx2};
}

std::pair<double, double> DeltaState::at(int round) const {
  if (round <= 0) return {0.0, 0.0};
  if (round > round_ || round <= round_ - static_cast<int>(ring_.size())) {
    throw PreconditionError("round " + std::to_string(round) + " is outside the history window");
  }
  return ring_[static_cast<size_t>(round) % ring_.size()];
}

void DeltaState::push(double dx1, double dx2) {
  ++round_;
  ring_[static_cast<size_t>(round_) % ring_.size()] = {dx1, dx2};
}

DeltaState iterate_recurrence(DeltaState state, double eta, int m, int n) {
  if (m != state.delay()) throw ConfigError("state was built for a different delay");
  const int t = state.round();
  const auto [a1, a2] = state.at(t - m);
  const auto [b1, b2] = state.at(t - m - 1);
  const double k1 = 2.0 * (n + 1) * eta;
  const double k0 = 2.0 * n * eta;
  const double next1 = state.dx1() + k1 * a2 - k0 * b2;
  const double next2 = state.dx2() - k1 * a1 + k0 * b1;
  state.push(next1, next2);
  return state;
}

Profile mp_profile_from_delta(double dx1, double dx2) {
  const Vector half = Vector::Constant(2, 0.5);
  const Vector c = (Vector(2) << 1.0, -1.0).finished();
  return {half + 0.5 * dx1 * c, half + 0.5 * dx2 * c};
}

std::vector<std::pair<double, double>> run_recurrence(double dx1, double dx2, double eta, int m,
                                                      int n, int horizon) {
  if (horizon <= 0) throw ConfigError("T must be >= 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(horizon);
  DeltaState state(dx1, dx2, m);
  out.emplace_back(dx1, dx2);
  for (int t = 2; t <= horizon; ++t) {
    state = iterate_recurrence(std::move(state), eta, m, n);
    out.emplace_back(state.dx1(), state.dx2());
  }
  return out;
}

PolarApprox to_polar(double dx1, double dx2) {
  return {std::log(std::hypot(dx1, dx2)), std::atan2(-dx2, dx1)};
}

PolarApprox polar_predict(int m, int n, double eta, int t, const PolarApprox& init) {
  const double steps = t - 1;
  const double alpha = m - n + 0.5;
  return {init.log_radius + alpha * 4.0 * eta * eta * steps, init.angle + 2.0 * eta * steps};
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kDiverges:
      return "diverges";
    case Verdict::kConverges:
      return "converges";
    case Verdict::kMarginal:
      break;
  }
  return "marginal";
}

Verdict thm1_thm2_verdict(int m, int n) {
  const double alpha = m - n + 0.5;
  if (alpha > 0.0) return Verdict::kDiverges;
  if (alpha < 0.0) return Verdict::kConverges;
  return Verdict::kMarginal;
}

double rotation_rate(const std::vector<std::pair<double, double>>& deltas) {
  std::vector<double> ts, angles;
  double unwrapped = 0.0, previous = 0.0;
  for (size_t k = 0; k < deltas.size(); ++k) {
    const double a = std::atan2(-deltas[k].second, deltas[k].first);
    if (k == 0) {
      unwrapped = a;
    } else {
      double step = a - previous;
      if (step > std::numbers::pi) step -= 2.0 * std::numbers::pi;
      if (step < -std::numbers::pi) step += 2.0 * std::numbers::pi;
      unwrapped += step;
    }
    previous = a;
    ts.push_back(static_cast<double>(k + 1));
    angles.push_back(unwrapped);
  }
  return fit_line(ts, angles).slope;
}

}  // namespace woftrl
