#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "woftrl/config.hpp"
#include "woftrl/learner.hpp"
#include "woftrl/metrics.hpp"

namespace woftrl {

/// Threshold on Dis used to call a run converged.
inline constexpr double kConvergedDis = 1e-2;

struct RunOptions {
  int threads = 1;
  std::ostream* progress = nullptr;  // "cell k/N" lines when set
};

/// Calls fn(0..count-1) on up to `threads` workers. The first exception thrown
/// by any call is rethrown after all workers stop.
void parallel_for(int count, const RunOptions& opts, const std::function<void(int)>& fn);

/// Defaults for a CLI subcommand: run, sweep, series, scaling, trajectory or
/// verify. Throws ConfigError for anything else.
ExperimentConfig defaults_for(const std::string& command);

/// 1 = T_1 < ... < T_k = T, roughly log-spaced, duplicates removed.
std::vector<int> log_spaced_rounds(int horizon, int points = 100);

/// One episode at (cfg.m, cfg.n) with eta = cfg.eta_for(cfg.T).
struct RunSummary {
  RunTrace trace;
  std::vector<double> regret;  // RegTot(t)
  std::vector<double> dis;     // empty when no equilibrium is known
};
RunSummary run_single(const ExperimentConfig& cfg);
/// t,reg_total,dis
void write_run_csv(const RunSummary& run, std::ostream& out);

struct CellResult {
  int m = 0;
  int n = 0;
  double eta = 0.0;
  int horizon = 0;
  double reg_total = 0.0;
  double log10_reg = 0.0;  // nan when reg_total <= 0
  double final_dis = 0.0;  // nan when no equilibrium is known
  double min_dis = 0.0;
};

/// Rows in m-major, n-minor order regardless of scheduling.
struct SweepResult {
  std::vector<CellResult> rows;
};

CellResult run_cell(const ExperimentConfig& cfg, const GameSpec& game, int m, int n, int horizon,
                    double eta);

/// One episode per (m, n) in m_range x n_range.
SweepResult phase_diagram(const ExperimentConfig& cfg, const RunOptions& opts = {});
/// m,n,eta,T,reg_total,log10_reg
void write_phase_diagram_csv(const SweepResult& sweep, std::ostream& out);

struct SeriesRow {
  int n = 0;
  int t = 0;
  double reg_total = 0.0;
};

/// RegTot(t) at log-spaced t for m = cfg.m and every n in n_range.
std::vector<SeriesRow> regret_series(const ExperimentConfig& cfg, const RunOptions& opts = {});
/// n,t,reg_total
void write_series_csv(const std::vector<SeriesRow>& rows, std::ostream& out);

struct ScalingRow {
  int horizon = 0;
  EtaRule rule = EtaRule::kConstant;
  double eta = 0.0;
  double reg_total = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  LinearFit inv_sqrt_fit;  // log10 RegTot against log10 T
  LinearFit constant_fit;
};

/// Default horizons for the scaling study: 10^3, 10^3.5, ..., 10^5.
std::vector<int> default_t_list();

/// RegTot(T) at (cfg.m, cfg.n) for every T in T_list under both
/// eta = eta_scale / sqrt(T) and eta = cfg.eta.
ScalingResult scaling_study(const ExperimentConfig& cfg, const RunOptions& opts = {});
/// T,eta_rule,eta,reg_total
void write_scaling_csv(const ScalingResult& result, std::ostream& out);

struct TrajectoryResult {
  int n = 0;
  RunTrace trace;
  std::vector<double> dis;  // nan entries when no equilibrium is known
  bool converged = false;   // Dis(T) < kConvergedDis
  bool diverged = false;    // Dis(T) > Dis(1)
  int first_below = -1;     // first t with Dis(t) < kConvergedDis, or -1
};

/// Full trajectories at m = cfg.m for every n in n_range.
std::vector<TrajectoryResult> trajectory_run(const ExperimentConfig& cfg,
                                             const RunOptions& opts = {});
/// n,t,player,coord_index,value,dis (player and coord_index count from 0)
void write_trajectory_csv(const std::vector<TrajectoryResult>& runs, std::ostream& out);

struct BestIterate {
  double min_dis = 0.0;
  int argmin_t = 0;
  std::vector<double> running_min;
};

/// Running minimum of Dis at (cfg.m, cfg.n).
///
/// Requires a poly-matrix zero-sum game with a reference equilibrium
/// (UnsupportedMetricError otherwise), n = m + 1 and
/// eta < corollary4_eta(m, L) (PreconditionError otherwise).
BestIterate best_iterate_check(const ExperimentConfig& cfg);

}  // namespace woftrl
