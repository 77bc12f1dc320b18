#pragma once

#include <utility>
#include <vector>

#include "woftrl/types.hpp"

namespace woftrl {

/// (Delta x_1^t, Delta x_2^t) of unconstrained Euclidean Matching Pennies,
/// with the last m + 2 rounds kept for the delayed terms.
class DeltaState {
 public:
  /// State at round 1. Rounds before 1 read as (0, 0).
  DeltaState(double dx1, double dx2, int m);

  int round() const { return round_; }
  double dx1() const { return current().first; }
  double dx2() const { return current().second; }
  int delay() const { return delay_; }

  /// Value at an earlier round still inside the window; (0, 0) for rounds <= 0.
  std::pair<double, double> at(int round) const;

  /// Appends round() + 1.
  void push(double dx1, double dx2);

 private:
  std::pair<double, double> current() const { return at(round_); }

  std::vector<std::pair<double, double>> ring_;
  int delay_;
  int round_ = 1;
};

/// One exact step:
///   dx1' = dx1 + 2(n+1) eta dx2^{t-m} - 2n eta dx2^{t-m-1}
///   dx2' = dx2 - 2(n+1) eta dx1^{t-m} + 2n eta dx1^{t-m-1}
/// Throws ConfigError if the state was built for a different m.
DeltaState iterate_recurrence(DeltaState state, double eta, int m, int n);

/// Unconstrained Matching Pennies profile with the given Delta x values:
/// x_i = (1/2, 1/2) + Delta x_i (1, -1) / 2. The dynamics keep this form.
Profile mp_profile_from_delta(double dx1, double dx2);

/// Rounds 1..T of the recurrence from (dx1, dx2).
std::vector<std::pair<double, double>> run_recurrence(double dx1, double dx2, double eta, int m,
                                                      int n, int horizon);

/// Delta x_1 = e^lambda cos theta, Delta x_2 = -e^lambda sin theta.
struct PolarApprox {
  double log_radius = 0.0;
  double angle = 0.0;
};

PolarApprox to_polar(double dx1, double dx2);

/// Leading-order prediction at round t from the state at round 1:
///   lambda_t = lambda_1 + (m - n + 1/2)(2 eta)^2 (t - 1)
///   theta_t  = theta_1 + 2 eta (t - 1)
PolarApprox polar_predict(int m, int n, double eta, int t, const PolarApprox& init);

enum class Verdict { kDiverges, kConverges, kMarginal };

const char* to_string(Verdict verdict);

/// Sign of m - n + 1/2. The rate is never zero for integer (m, n), so
/// kMarginal is only returned if that ever changes.
Verdict thm1_thm2_verdict(int m, int n);

/// Slope of the unwrapped angle atan2(-dx2, dx1) against t, fitted over all
/// rounds. Each step adds the principal-branch increment.
double rotation_rate(const std::vector<std::pair<double, double>>& deltas);

}  // namespace woftrl
