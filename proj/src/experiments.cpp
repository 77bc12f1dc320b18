#include "woftrl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "woftrl/csv.hpp"

namespace woftrl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Dis series when the game has one, empty otherwise.
std::vector<double> try_distance(const RunTrace& trace, const GameSpec& game) {
  try {
    return distance_to_nash(trace, game);
  } catch (const UnsupportedMetricError&) {
    return {};
  }
}

RunTrace episode(const ExperimentConfig& cfg, const GameSpec& game, int m, int n, int horizon,
                 double eta) {
  return run_episode(game, learner_configs(cfg, game, m, n, eta), horizon,
                     resolve_init(cfg, game));
}

}  // namespace

void parallel_for(int count, const RunOptions& opts, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(opts.threads, count));
  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (int k = next++; k < count && !failed; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
      const int finished = ++done;
      if (opts.progress) {
        std::lock_guard lock(mu);
        *opts.progress << "cell " << finished << "/" << count << "\n";
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

ExperimentConfig defaults_for(const std::string& command) {
  ExperimentConfig cfg;
  if (command == "run") {
    cfg.out = "run.csv";
  } else if (command == "sweep") {
    cfg.horizon = 100000;
    cfg.m_range = parse_int_list("0:30");
    cfg.n_range = parse_int_list("1:35");
    cfg.out = "phase_diagram.csv";
  } else if (command == "series") {
    cfg.horizon = 100000;
    cfg.m = 10;
    cfg.n_range = {1, 3, 5, 7, 9, 11, 13, 15};
    cfg.out = "series.csv";
  } else if (command == "scaling") {
    cfg.m = 10;
    cfg.n = 11;
    cfg.t_list = default_t_list();
    cfg.out = "scaling.csv";
  } else if (command == "trajectory") {
    cfg.game = "weighted_rps";
    cfg.regularizer = RegularizerKind::kEntropic;
    cfg.eta = 0.1;
    cfg.m = 4;
    cfg.n_range = {3, 4, 5, 6};
    cfg.init = "0.2,0.5,0.3";
    cfg.out = "trajectory.csv";
  } else if (command == "verify") {
    cfg.m = 2;
    cfg.n = 3;
    cfg.eta = 1e-3;
    cfg.init = "0.55,0.45";
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return cfg;
}

std::vector<int> log_spaced_rounds(int horizon, int points) {
  if (horizon < 1) throw ConfigError("T must be >= 1");
  std::vector<int> out;
  const double top = std::log10(static_cast<double>(horizon));
  for (int k = 0; k < points; ++k) {
    const double e = points == 1 ? top : top * k / (points - 1);
    const int t = std::clamp(static_cast<int>(std::llround(std::pow(10.0, e))), 1, horizon);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

RunSummary run_single(const ExperimentConfig& cfg) {
  cfg.validate();
  const GameSpec game = resolve_game(cfg);
  RunSummary run;
  run.trace = episode(cfg, game, cfg.m, cfg.n, cfg.horizon, cfg.eta_for(cfg.horizon));
  run.regret = running_regret(run.trace);
  run.dis = try_distance(run.trace, game);
  return run;
}

void write_run_csv(const RunSummary& run, std::ostream& out) {
  CsvWriter csv(out, {"t", "reg_total", "dis"});
  for (int t = 1; t <= run.trace.horizon; ++t) {
    csv.row(t, run.regret[t - 1], run.dis.empty() ? kNaN : run.dis[t - 1]);
  }
}

CellResult run_cell(const ExperimentConfig& cfg, const GameSpec& game, int m, int n, int horizon,
                    double eta) {
  const RunTrace trace = episode(cfg, game, m, n, horizon, eta);
  CellResult cell;
  cell.m = m;
  cell.n = n;
  cell.eta = eta;
  cell.horizon = horizon;
  cell.reg_total = total_regret(trace).total;
  cell.log10_reg = cell.reg_total > 0.0 ? std::log10(cell.reg_total) : kNaN;
  const auto dis = try_distance(trace, game);
  cell.final_dis = dis.empty() ? kNaN : dis.back();
  cell.min_dis = dis.empty() ? kNaN : *std::min_element(dis.begin(), dis.end());
  return cell;
}

SweepResult phase_diagram(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const GameSpec game = resolve_game(cfg);
  const double eta = cfg.eta_for(cfg.horizon);
  const int rows = static_cast<int>(cfg.m_range.size() * cfg.n_range.size());
  const int per_m = static_cast<int>(cfg.n_range.size());
  // Fail on a bad cell config before spending time on the grid.
  learner_configs(cfg, game, cfg.m_range.front(), cfg.n_range.front(), eta);
  resolve_init(cfg, game);
  SweepResult sweep;
  sweep.rows.resize(rows);
  parallel_for(rows, opts, [&](int k) {
    sweep.rows[k] = run_cell(cfg, game, cfg.m_range[k / per_m], cfg.n_range[k % per_m],
                             cfg.horizon, eta);
  });
  return sweep;
}

void write_phase_diagram_csv(const SweepResult& sweep, std::ostream& out) {
  CsvWriter csv(out, {"m", "n", "eta", "T", "reg_total", "log10_reg"});
  for (const auto& r : sweep.rows) csv.row(r.m, r.n, r.eta, r.horizon, r.reg_total, r.log10_reg);
}

std::vector<SeriesRow> regret_series(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const GameSpec game = resolve_game(cfg);
  const double eta = cfg.eta_for(cfg.horizon);
  const auto rounds = log_spaced_rounds(cfg.horizon);
  const int count = static_cast<int>(cfg.n_range.size());
  std::vector<std::vector<SeriesRow>> per_n(count);
  parallel_for(count, opts, [&](int k) {
    const int n = cfg.n_range[k];
    const auto regret = running_regret(episode(cfg, game, cfg.m, n, cfg.horizon, eta));
    for (int t : rounds) per_n[k].push_back({n, t, regret[t - 1]});
  });
  std::vector<SeriesRow> rows;
  for (auto& block : per_n) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

void write_series_csv(const std::vector<SeriesRow>& rows, std::ostream& out) {
  CsvWriter csv(out, {"n", "t", "reg_total"});
  for (const auto& r : rows) csv.row(r.n, r.t, r.reg_total);
}

std::vector<int> default_t_list() {
  std::vector<int> out;
  for (double e = 3.0; e <= 5.0 + 1e-9; e += 0.5) {
    out.push_back(static_cast<int>(std::llround(std::pow(10.0, e))));
  }
  return out;
}

ScalingResult scaling_study(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const GameSpec game = resolve_game(cfg);
  const std::vector<int> ts = cfg.t_list.empty() ? default_t_list() : cfg.t_list;
  if (ts.size() < 2) throw ConfigError("key 'T_list': need at least two horizons");
  const EtaRule rules[] = {EtaRule::kInvSqrtT, EtaRule::kConstant};
  const int count = static_cast<int>(2 * ts.size());
  ScalingResult result;
  result.rows.resize(count);
  parallel_for(count, opts, [&](int k) {
    ExperimentConfig c = cfg;
    c.eta_rule = rules[k / ts.size()];
    const int horizon = ts[k % ts.size()];
    const double eta = c.eta_for(horizon);
    const RunTrace trace = episode(c, game, cfg.m, cfg.n, horizon, eta);
    result.rows[k] = {horizon, c.eta_rule, eta, total_regret(trace).total};
  });
  for (EtaRule rule : rules) {
    std::vector<double> xs, ys;
    for (const auto& r : result.rows) {
      if (r.rule != rule) continue;
      xs.push_back(std::log10(static_cast<double>(r.horizon)));
      ys.push_back(std::log10(std::max(r.reg_total, 1e-300)));
    }
    (rule == EtaRule::kInvSqrtT ? result.inv_sqrt_fit : result.constant_fit) = fit_line(xs, ys);
  }
  return result;
}

void write_scaling_csv(const ScalingResult& result, std::ostream& out) {
  CsvWriter csv(out, {"T", "eta_rule", "eta", "reg_total"});
  for (const auto& r : result.rows) csv.row(r.horizon, to_string(r.rule), r.eta, r.reg_total);
}

std::vector<TrajectoryResult> trajectory_run(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const GameSpec game = resolve_game(cfg);
  const double eta = cfg.eta_for(cfg.horizon);
  const int count = static_cast<int>(cfg.n_range.size());
  std::vector<TrajectoryResult> runs(count);
  parallel_for(count, opts, [&](int k) {
    TrajectoryResult& r = runs[k];
    r.n = cfg.n_range[k];
    r.trace = episode(cfg, game, cfg.m, r.n, cfg.horizon, eta);
    r.dis = try_distance(r.trace, game);
    if (r.dis.empty()) {
      r.dis.assign(r.trace.horizon, kNaN);
      return;
    }
    r.converged = r.dis.back() < kConvergedDis;
    r.diverged = r.dis.back() > r.dis.front();
    const auto it = std::find_if(r.dis.begin(), r.dis.end(),
                                 [](double d) { return d < kConvergedDis; });
    if (it != r.dis.end()) r.first_below = static_cast<int>(it - r.dis.begin()) + 1;
  });
  return runs;
}

void write_trajectory_csv(const std::vector<TrajectoryResult>& runs, std::ostream& out) {
  CsvWriter csv(out, {"n", "t", "player", "coord_index", "value", "dis"});
  for (const auto& r : runs) {
    for (int t = 1; t <= r.trace.horizon; ++t) {
      for (int i = 0; i < r.trace.num_players(); ++i) {
        const auto& xs = r.trace.strategies[i];
        for (int j = 0; j < xs.rows(); ++j) csv.row(r.n, t, i, j, xs(j, t - 1), r.dis[t - 1]);
      }
    }
  }
}

BestIterate best_iterate_check(const ExperimentConfig& cfg) {
  cfg.validate();
  const GameSpec game = resolve_game(cfg);
  if (!is_polymatrix_zero_sum(game)) {
    throw UnsupportedMetricError("best-iterate check needs a poly-matrix zero-sum game");
  }
  if (cfg.n != cfg.m + 1) throw PreconditionError("best-iterate check needs n = m + 1");
  const double eta = cfg.eta_for(cfg.horizon);
  const double limit = corollary4_eta(cfg.m, game.lipschitz());
  if (!(eta < limit)) {
    throw PreconditionError("best-iterate check needs eta < " + std::to_string(limit));
  }
  const RunTrace trace = episode(cfg, game, cfg.m, cfg.n, cfg.horizon, eta);
  BestIterate best;
  const auto dis = distance_to_nash(trace, game);
  best.running_min = running_min(dis);
  best.min_dis = best.running_min.back();
  best.argmin_t = static_cast<int>(std::min_element(dis.begin(), dis.end()) - dis.begin()) + 1;
  return best;
}

}  // namespace woftrl
