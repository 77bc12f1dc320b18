#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "woftrl/experiments.hpp"
#include "woftrl/verify.hpp"

using namespace woftrl;

namespace {

ExperimentConfig mp_cfg() {
  ExperimentConfig cfg = defaults_for("sweep");
  cfg.init = "0.55,0.45";
  return cfg;
}

std::string sweep_csv(const ExperimentConfig& cfg, int threads) {
  RunOptions opts;
  opts.threads = threads;
  std::ostringstream out;
  write_phase_diagram_csv(phase_diagram(cfg, opts), out);
  return out.str();
}

}  // namespace

TEST_CASE("defaults") {
  const ExperimentConfig sweep = defaults_for("sweep");
  CHECK(sweep.m_range.size() == 31);
  CHECK(sweep.n_range.size() == 35);
  const ExperimentConfig traj = defaults_for("trajectory");
  CHECK(traj.game == "weighted_rps");
  CHECK(traj.eta == 0.1);
  CHECK(traj.m == 4);
  CHECK(traj.n_range == std::vector<int>{3, 4, 5, 6});
  CHECK(default_t_list() == std::vector<int>{1000, 3162, 10000, 31623, 100000});
  CHECK_THROWS_AS(defaults_for("dance"), ConfigError);
}

TEST_CASE("default grid cardinality") {
  ExperimentConfig cfg = mp_cfg();
  cfg.horizon = 5;
  const SweepResult s = phase_diagram(cfg, {2, nullptr});
  CHECK(s.rows.size() == 31 * 35);
  CHECK(s.rows.front().m == 0);
  CHECK(s.rows.front().n == 1);
  CHECK(s.rows[1].n == 2);
  CHECK(s.rows.back().m == 30);
  CHECK(s.rows.back().n == 35);
}

TEST_CASE("sweep determinism and scheduling independence") {
  ExperimentConfig cfg = mp_cfg();
  cfg.horizon = 2000;
  cfg.m_range = {0, 2, 5};
  cfg.n_range = {1, 3, 6};
  const std::string a = sweep_csv(cfg, 1);
  CHECK(a == sweep_csv(cfg, 1));
  CHECK(a == sweep_csv(cfg, 4));
  CHECK(a.rfind("m,n,eta,T,reg_total,log10_reg\n", 0) == 0);
}

TEST_CASE("cell independence") {
  ExperimentConfig cfg = mp_cfg();
  cfg.horizon = 1500;
  cfg.m_range = {1, 4};
  cfg.n_range = {2, 5};
  const SweepResult full = phase_diagram(cfg);
  cfg.n_range = {5};
  const SweepResult part = phase_diagram(cfg);
  REQUIRE(part.rows.size() == 2);
  CHECK(part.rows[0].reg_total == full.rows[1].reg_total);
  CHECK(part.rows[1].reg_total == full.rows[3].reg_total);
}

TEST_CASE("grid monotonicity in the m = 10 column") {
  ExperimentConfig cfg = mp_cfg();
  cfg.horizon = 100000;
  cfg.m_range = {10};
  cfg.n_range = {1, 11};
  const SweepResult s = phase_diagram(cfg, {2, nullptr});
  CHECK(s.rows[1].reg_total < s.rows[0].reg_total);
}

TEST_CASE("log-spaced rounds") {
  const auto r = log_spaced_rounds(100000);
  CHECK(r.front() == 1);
  CHECK(r.back() == 100000);
  CHECK(r.size() <= 101);
  CHECK(std::is_sorted(r.begin(), r.end()));
  CHECK(std::adjacent_find(r.begin(), r.end()) == r.end());
  CHECK(log_spaced_rounds(1) == std::vector<int>{1});
}

TEST_CASE("regret series") {
  ExperimentConfig cfg = defaults_for("series");
  cfg.init = "0.55,0.45";
  cfg.horizon = 3000;
  cfg.n_range = {9, 11};
  const auto rows = regret_series(cfg);
  const auto per_n = log_spaced_rounds(3000).size();
  CHECK(rows.size() == 2 * per_n);
  CHECK(rows.front().n == 9);
  CHECK(rows.back().n == 11);
  CHECK(rows.back().t == 3000);
  std::ostringstream out;
  write_series_csv(rows, out);
  CHECK(out.str().rfind("n,t,reg_total\n", 0) == 0);
}

TEST_CASE("scaling study shape") {
  ExperimentConfig cfg = defaults_for("scaling");
  cfg.init = "0.55,0.45";
  cfg.t_list = {1000, 4000};
  const ScalingResult s = scaling_study(cfg);
  REQUIRE(s.rows.size() == 4);
  CHECK(s.rows[0].rule == EtaRule::kInvSqrtT);
  CHECK(s.rows[0].eta == doctest::Approx(1.0 / std::sqrt(1000.0)));
  CHECK(s.rows[3].rule == EtaRule::kConstant);
  CHECK(s.rows[3].eta == 0.01);
  std::ostringstream out;
  write_scaling_csv(s, out);
  CHECK(out.str().rfind("T,eta_rule,eta,reg_total\n", 0) == 0);
  cfg.t_list = {1000};
  CHECK_THROWS_AS(scaling_study(cfg), ConfigError);
}

TEST_CASE("trajectory flags") {
  const auto runs = trajectory_run(defaults_for("trajectory"), {2, nullptr});
  REQUIRE(runs.size() == 4);
  CHECK_FALSE(runs[0].converged);
  CHECK_FALSE(runs[1].converged);
  CHECK(runs[0].diverged);
  CHECK(runs[1].diverged);
  CHECK(runs[2].converged);
  CHECK(runs[3].converged);
  CHECK(runs[3].first_below < runs[2].first_below);
  CHECK(runs[0].first_below == -1);
}

TEST_CASE("trajectory csv") {
  ExperimentConfig cfg = defaults_for("trajectory");
  cfg.horizon = 3;
  cfg.n_range = {5};
  std::ostringstream out;
  write_trajectory_csv(trajectory_run(cfg), out);
  std::istringstream in(out.str());
  std::string line;
  int count = 0;
  std::getline(in, line);
  CHECK(line == "n,t,player,coord_index,value,dis");
  while (std::getline(in, line)) ++count;
  CHECK(count == 3 * 2 * 3);
}

TEST_CASE("trajectory on a game without an equilibrium") {
  ExperimentConfig cfg = defaults_for("trajectory");
  cfg.game = "sato";
  cfg.horizon = 50;
  cfg.n_range = {5};
  const auto runs = trajectory_run(cfg);
  CHECK(std::isnan(runs[0].dis.back()));
  CHECK_FALSE(runs[0].converged);
}

TEST_CASE("run summary") {
  ExperimentConfig cfg = defaults_for("run");
  cfg.init = "0.55,0.45";
  cfg.horizon = 100;
  const RunSummary r = run_single(cfg);
  CHECK(r.regret.size() == 100);
  CHECK(r.dis.size() == 100);
  std::ostringstream out;
  write_run_csv(r, out);
  CHECK(out.str().rfind("t,reg_total,dis\n1,", 0) == 0);
}

TEST_CASE("best-iterate check") {
  // Euclidean; the entropic run needs about 10^6 rounds at this step size.
  ExperimentConfig cfg = defaults_for("run");
  cfg.game = "weighted_rps";
  cfg.init = "0.2,0.5,0.3";
  cfg.m = 4;
  cfg.n = 5;
  cfg.eta = 0.005;
  cfg.horizon = 100000;
  const BestIterate b = best_iterate_check(cfg);
  CHECK(b.min_dis < 1e-2);
  CHECK(std::is_sorted(b.running_min.rbegin(), b.running_min.rend()));

  ExperimentConfig mp = defaults_for("run");
  mp.init = "0.55,0.45";
  mp.m = 0;
  mp.n = 1;
  mp.eta = 0.1;
  mp.horizon = 5000;
  const BestIterate bm = best_iterate_check(mp);
  CHECK(bm.running_min.back() < bm.running_min.front());

  mp.init = "uniform";
  const BestIterate at_eq = best_iterate_check(mp);
  CHECK(at_eq.min_dis == 0.0);
  CHECK(at_eq.argmin_t == 1);

  mp.n = 2;
  CHECK_THROWS_AS(best_iterate_check(mp), PreconditionError);
  mp.n = 1;
  mp.eta = 0.5;
  CHECK_THROWS_AS(best_iterate_check(mp), PreconditionError);
  cfg.game = "sato";
  CHECK_THROWS_AS(best_iterate_check(cfg), UnsupportedMetricError);
}

TEST_CASE("parallel_for rethrows") {
  RunOptions opts;
  opts.threads = 3;
  CHECK_THROWS_AS(parallel_for(10, opts,
                               [](int k) {
                                 if (k == 4) throw ConfigError("boom");
                               }),
                  ConfigError);
}

TEST_CASE("verify suites") {
  const ExperimentConfig cfg = defaults_for("verify");
  VerifyTolerances tol;
  for (const auto& s : run_suites("all", cfg, tol)) {
    CAPTURE(s.name);
    CHECK(s.passed);
  }
  tol.recurrence = -1.0;
  CHECK_FALSE(run_suites("recurrence", cfg, tol).front().passed);
  CHECK_THROWS_AS(run_suites("bogus", cfg, tol), ConfigError);
}
