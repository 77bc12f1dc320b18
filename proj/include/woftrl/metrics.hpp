#pragma once

#include <utility>
#include <vector>

#include "woftrl/game.hpp"
#include "woftrl/learner.hpp"
#include "woftrl/types.hpp"

namespace woftrl {

/// Per-player regret terms after `rounds` rounds.
struct RegretLedger {
  std::vector<double> best;      // max over the comparator set of <x_i, sum_t u_i^t>
  std::vector<double> realized;  // sum_t <x_i^t, u_i^t>
  double total = 0.0;            // sum_i (best_i - realized_i)
};

/// RegTot after the first `rounds` rounds (default: the whole trace).
///
/// Simplex runs compare against the simplex, so best_i = max_j sum_t u_ij^t.
/// Unconstrained runs compare against the l1 ball of radius
/// D_i = mean_t ||x_i^t||_1, so best_i = D_i ||sum_t u_i^t||_inf.
RegretLedger total_regret(const RunTrace& trace, int rounds = -1);

/// RegTot(t) for t = 1..T in one pass.
std::vector<double> running_regret(const RunTrace& trace);

/// sum_i <x_i^t, u_i^t> for every round; zero for poly-matrix zero-sum games.
std::vector<double> payoff_sum_series(const RunTrace& trace);

/// Dis(t) = sqrt(sum_i ||x_i^t - x_i^*||^2) against a fixed equilibrium.
std::vector<double> distance_to_nash(const RunTrace& trace, const Profile& nash);

/// Dis(t) for unconstrained Matching Pennies, whose equilibria form the affine
/// set {Delta x_i = 0}. The nearest one is x_i - Delta x_i c / 2, giving
/// Dis = sqrt(sum_i Delta x_i^2 / 2).
std::vector<double> distance_to_nash_mp_unconstrained(const RunTrace& trace);

/// Picks the rule that applies: the affine rule for unconstrained Matching
/// Pennies, otherwise the game's reference equilibrium. Throws
/// UnsupportedMetricError when neither is available.
std::vector<double> distance_to_nash(const RunTrace& trace, const GameSpec& game);

/// Running minimum of a sequence.
std::vector<double> running_min(const std::vector<double>& values);

/// Both sides of the RVU inequality after `rounds` rounds.
struct RvuReport {
  int rounds = 0;
  double lambda = 0.0;       // (m+1)(m+2)/2
  double h_width = 0.0;      // anchored h-range used for alpha
  double h_max_plain = 0.0;  // h_max - h_min of the unanchored regularizer
  double alpha = 0.0;        // N * h_width / eta
  double alpha_plain = 0.0;  // N * h_max_plain / eta
  double beta = 0.0;         // lambda^2 eta
  double gamma = 0.0;        // 1 / (8 eta)
  double sum_du2 = 0.0;      // sum_t ||u^t - u^{t-1}||^2, u^0 = 0
  double sum_dx2 = 0.0;      // sum_t ||x^t - x^{t-1}||^2, x^0 = x^1
  double lhs = 0.0;          // RegTot(rounds)
  double rhs = 0.0;
  bool holds = false;

  double slack() const { return rhs - lhs; }
};

/// lambda = (m+1)(m+2)/2.
double delay_lambda(int m);

/// Evaluates the RVU inequality at each checkpoint. Requires every player to
/// run GFTRL/GMD on the simplex with a shared eta, delay m and weight n = m+1;
/// otherwise PreconditionError.
std::vector<RvuReport> rvu_check(const RunTrace& trace, const std::vector<int>& checkpoints);
RvuReport rvu_check(const RunTrace& trace);

/// eta = 1 / (sqrt(8) lambda L). ConfigError for L <= 0 or m < 0.
double corollary4_eta(int m, double lipschitz);

/// sqrt(8) N lambda h: the constant-regret bound as usually quoted.
double corollary4_bound(int m, int num_players, double h);

/// N h / eta evaluated at corollary4_eta: sqrt(8) N lambda L h. This is what the
/// RVU inequality actually yields once its variation terms cancel.
double corollary4_bound_with_lipschitz(int m, int num_players, double h, double lipschitz);

/// Fitted exponential growth rate of the orbit radius.
struct RateEstimate {
  double alpha_hat = 0.0;     // slope of log r_t per round, divided by (2 eta)^2
  double alpha_theory = 0.0;  // m - n + 1/2
  double r2 = 0.0;
  int points = 0;
};

/// (Delta x_1^t, Delta x_2^t) for t = 1..T of a Matching Pennies trace,
/// Delta x_i = <x_i, (1, -1)>.
std::vector<std::pair<double, double>> mp_delta_series(const RunTrace& trace);

/// Least-squares fit of log r_t = log sqrt(dx1^2 + dx2^2) against t.
///
/// Rounds before 10 (m + 1) are skipped. If r_t drops below 1e-300 the series
/// is cut there and the prefix is fitted.
RateEstimate radius_rate_estimate(const std::vector<std::pair<double, double>>& deltas,
                                  double eta, int m, int n);

/// Ordinary least-squares slope, intercept and r^2.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace woftrl
