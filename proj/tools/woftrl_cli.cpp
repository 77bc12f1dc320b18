// Command-line front end: woftrl <run|sweep|series|scaling|trajectory|verify>.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration or input
// error, 3 unexpected internal error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "woftrl/analytic_mp.hpp"
#include "woftrl/config.hpp"
#include "woftrl/csv.hpp"
#include "woftrl/experiments.hpp"
#include "woftrl/verify.hpp"

namespace {

using namespace woftrl;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 1;
  bool progress = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "config file (key = value lines)");
  cmd->add_option("-s,--set", args.overrides, "override key=value; repeatable, beats the file")
      ->take_all();
  cmd->add_option("-j,--threads", args.threads, "worker threads for grid commands")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--progress", args.progress, "print a per-cell counter to stderr");
}

ExperimentConfig build_config(const std::string& command, const CommonArgs& args) {
  ExperimentConfig cfg = defaults_for(command);
  if (!args.config_path.empty()) apply_config_file(cfg, args.config_path);
  for (const auto& text : args.overrides) {
    const auto [key, value] = split_override(text);
    apply_setting(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

RunOptions options(const CommonArgs& args) {
  RunOptions opts;
  opts.threads = args.threads;
  if (args.progress) opts.progress = &std::cerr;
  return opts;
}

template <typename Writer>
void write_output(const std::string& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  writer(out);
  std::cerr << "wrote " << path << "\n";
}

int cmd_run(const CommonArgs& args, bool best_iterate) {
  const ExperimentConfig cfg = build_config("run", args);
  const RunSummary run = run_single(cfg);
  const RegretLedger ledger = total_regret(run.trace);
  std::cout << "game " << run.trace.game_name << "  m=" << cfg.m << " n=" << cfg.n
            << " eta=" << format_double(cfg.eta_for(cfg.horizon)) << " T=" << cfg.horizon << "\n";
  for (size_t i = 0; i < ledger.best.size(); ++i) {
    std::cout << "player " << i << "  best=" << format_double(ledger.best[i])
              << " realized=" << format_double(ledger.realized[i]) << "\n";
  }
  std::cout << "reg_total " << format_double(ledger.total) << "\n";
  if (!run.dis.empty()) {
    std::cout << "dis_first " << format_double(run.dis.front()) << "\n";
    std::cout << "dis_final " << format_double(run.dis.back()) << "\n";
  }
  std::cout << "verdict " << to_string(thm1_thm2_verdict(cfg.m, cfg.n)) << "\n";
  if (best_iterate) {
    const BestIterate best = best_iterate_check(cfg);
    std::cout << "min_dis " << format_double(best.min_dis) << " at t=" << best.argmin_t << "\n";
  }
  write_output(cfg.out, [&](std::ostream& out) { write_run_csv(run, out); });
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const ExperimentConfig cfg = build_config("sweep", args);
  const SweepResult sweep = phase_diagram(cfg, options(args));
  std::cout << "cells " << sweep.rows.size() << "\n";
  write_output(cfg.out, [&](std::ostream& out) { write_phase_diagram_csv(sweep, out); });
  return 0;
}

int cmd_series(const CommonArgs& args) {
  const ExperimentConfig cfg = build_config("series", args);
  const auto rows = regret_series(cfg, options(args));
  for (const auto& r : rows) {
    if (r.t == cfg.horizon) std::cout << "n=" << r.n << " reg_total " << format_double(r.reg_total) << "\n";
  }
  write_output(cfg.out, [&](std::ostream& out) { write_series_csv(rows, out); });
  return 0;
}

int cmd_scaling(const CommonArgs& args) {
  const ExperimentConfig cfg = build_config("scaling", args);
  const ScalingResult result = scaling_study(cfg, options(args));
  std::cout << "slope inv_sqrt_T " << format_double(result.inv_sqrt_fit.slope) << "\n";
  std::cout << "slope constant " << format_double(result.constant_fit.slope) << "\n";
  write_output(cfg.out, [&](std::ostream& out) { write_scaling_csv(result, out); });
  return 0;
}

int cmd_trajectory(const CommonArgs& args) {
  const ExperimentConfig cfg = build_config("trajectory", args);
  const auto runs = trajectory_run(cfg, options(args));
  for (const auto& r : runs) {
    std::cout << "n=" << r.n << " dis_first " << format_double(r.dis.front()) << " dis_final "
              << format_double(r.dis.back()) << " converged " << (r.converged ? "yes" : "no")
              << " first_below " << r.first_below << "\n";
  }
  write_output(cfg.out, [&](std::ostream& out) { write_trajectory_csv(runs, out); });
  return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& suite, const VerifyTolerances& tol) {
  const ExperimentConfig cfg = build_config("verify", args);
  bool ok = true;
  for (const auto& result : run_suites(suite, cfg, tol)) {
    std::cout << "[" << result.name << "] " << (result.passed ? "PASS" : "FAIL") << "\n";
    for (const auto& line : result.lines) std::cout << "  " << line << "\n";
    ok = ok && result.passed;
  }
  return ok ? 0 : 1;
}

std::string keys_footer() {
  std::string text = "Config keys (file lines 'key = value' or --set key=value):\n";
  for (const auto& [key, help] : config_keys()) {
    text += "  " + key + std::string(key.size() < 12 ? 12 - key.size() : 1, ' ') + help + "\n";
  }
  text += "Precedence: command defaults < --config file < --set overrides.\n";
  text += "Exit codes: 0 ok, 1 verification failure, 2 config/input error, 3 internal error.";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed-feedback generalized FTRL in normal-form games"};
  app.footer(keys_footer());
  app.require_subcommand(1);

  CommonArgs args;
  bool best_iterate = false;
  std::string suite = "all";
  VerifyTolerances tol;

  auto* run = app.add_subcommand("run", "one episode, summary to stdout, run.csv (t,reg_total,dis)");
  add_common(run, args);
  run->add_flag("--best-iterate", best_iterate, "also report min_t Dis(t) (zero-sum, n = m+1)");
  auto* sweep = app.add_subcommand("sweep", "phase diagram over m_range x n_range");
  add_common(sweep, args);
  auto* series = app.add_subcommand("series", "RegTot(t) at log-spaced t for each n in n_range");
  add_common(series, args);
  auto* scaling = app.add_subcommand("scaling", "RegTot(T) over T_list for both eta rules");
  add_common(scaling, args);
  auto* trajectory = app.add_subcommand("trajectory", "strategy trajectories and Dis for each n");
  add_common(trajectory, args);
  auto* verify = app.add_subcommand("verify", "property suites; exit 1 on any failure");
  add_common(verify, args);
  verify->add_option("--suite", suite, "recurrence | gmd | rvu | rate | all");
  verify->add_option("--tol-recurrence", tol.recurrence, "sup-norm gap (default 1e-12)");
  verify->add_option("--tol-gmd", tol.gmd, "sup-norm gap (default 1e-9)");
  verify->add_option("--tol-rate", tol.rate, "relative alpha error (default 0.05)");
  verify->add_option("--tol-rvu-slack", tol.rvu_slack, "minimum rhs - lhs (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(args, best_iterate);
    if (*sweep) return cmd_sweep(args);
    if (*series) return cmd_series(args);
    if (*scaling) return cmd_scaling(args);
    if (*trajectory) return cmd_trajectory(args);
    if (*verify) return cmd_verify(args, suite, tol);
  } catch (const woftrl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
