#pragma once

#include <string>
#include <vector>

#include "woftrl/config.hpp"
#include "woftrl/metrics.hpp"

namespace woftrl {

struct VerifyTolerances {
  double recurrence = 1e-12;  // sup-norm gap, learner vs exact recurrence
  double gmd = 1e-9;          // sup-norm gap, GFTRL vs GMD
  double rate = 0.05;         // relative error of alpha_hat, floored at 1 in the scale
  double rvu_slack = 0.0;     // required rhs - lhs
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;  // one per checked case
};

/// Sup-norm gap between the learner's unconstrained MP Delta x trajectory and
/// the exact recurrence, both started from (1, 0).
double recurrence_gap(int m, int n, double eta, int horizon);

/// Sup-norm gap between GFTRL and GMD iterates on an entropic simplex game.
double gmd_gap(const GameSpec& game, int m, int n, double eta, int horizon,
               const std::optional<Profile>& init);

/// alpha_hat from a learner run of unconstrained MP started at Delta x = (1, 0).
RateEstimate mp_rate(int m, int n, double eta, int horizon);

/// (m, n) in {0,1,2,4} x {0,1,2,5}, eta = 1e-3, T = 1e4.
SuiteResult verify_recurrence(const VerifyTolerances& tol);
/// Weighted RPS, entropic, (m, n) = (4, 5), eta = 0.1, T = 1e4.
SuiteResult verify_gmd(const VerifyTolerances& tol);
/// RVU ledger at (cfg.m, cfg.n) with checkpoints 1e2, 1e3, 1e4 (those <= T).
SuiteResult verify_rvu(const ExperimentConfig& cfg, const VerifyTolerances& tol);
/// Rate law over the recurrence grid.
SuiteResult verify_rate(const VerifyTolerances& tol);

/// "recurrence", "gmd", "rvu", "rate" or "all". ConfigError otherwise.
std::vector<SuiteResult> run_suites(const std::string& suite, const ExperimentConfig& cfg,
                                    const VerifyTolerances& tol);

}  // namespace woftrl
