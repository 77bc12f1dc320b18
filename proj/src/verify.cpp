#include "woftrl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "woftrl/analytic_mp.hpp"
#include "woftrl/csv.hpp"

namespace woftrl {

namespace {

const int kGridM[] = {0, 1, 2, 4};
const int kGridN[] = {0, 1, 2, 5};

RunTrace mp_unconstrained_run(int m, int n, double eta, int horizon) {
  LearnerConfig base;
  base.eta = eta;
  base.delay = m;
  base.weight = n;
  base.regularizer = {RegularizerKind::kEuclidean, Domain::kUnconstrained, 2};
  const GameSpec game = matching_pennies();
  return run_episode(game, uniform_configs(game, base), horizon, mp_profile_from_delta(1.0, 0.0));
}

std::string cell_label(int m, int n) {
  return "(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

}  // namespace

double recurrence_gap(int m, int n, double eta, int horizon) {
  const auto learner = mp_delta_series(mp_unconstrained_run(m, n, eta, horizon));
  const auto exact = run_recurrence(1.0, 0.0, eta, m, n, horizon);
  double gap = 0.0;
  for (int t = 0; t < horizon; ++t) {
    gap = std::max({gap, std::abs(learner[t].first - exact[t].first),
                    std::abs(learner[t].second - exact[t].second)});
  }
  return gap;
}

double gmd_gap(const GameSpec& game, int m, int n, double eta, int horizon,
               const std::optional<Profile>& init) {
  LearnerConfig base;
  base.eta = eta;
  base.delay = m;
  base.weight = n;
  base.regularizer = {RegularizerKind::kEntropic, Domain::kSimplex, 2};
  const auto ftrl = run_episode(game, uniform_configs(game, base), horizon, init);
  base.algorithm = Algorithm::kGmd;
  const auto gmd = run_episode(game, uniform_configs(game, base), horizon, init);
  double gap = 0.0;
  for (int i = 0; i < game.num_players(); ++i) {
    gap = std::max(gap, (ftrl.strategies[i] - gmd.strategies[i]).cwiseAbs().maxCoeff());
  }
  return gap;
}

RateEstimate mp_rate(int m, int n, double eta, int horizon) {
  return radius_rate_estimate(mp_delta_series(mp_unconstrained_run(m, n, eta, horizon)), eta, m, n);
}

SuiteResult verify_recurrence(const VerifyTolerances& tol) {
  SuiteResult result{"recurrence", true, {}};
  for (int m : kGridM) {
    for (int n : kGridN) {
      const double gap = recurrence_gap(m, n, 1e-3, 10000);
      const bool ok = gap <= tol.recurrence;
      result.passed = result.passed && ok;
      result.lines.push_back(cell_label(m, n) + " gap=" + format_double(gap) +
                             (ok ? " ok" : " FAIL"));
    }
  }
  return result;
}

SuiteResult verify_gmd(const VerifyTolerances& tol) {
  SuiteResult result{"gmd", true, {}};
  const GameSpec game = weighted_rps();
  const Vector x1 = (Vector(3) << 0.2, 0.5, 0.3).finished();
  const double gap = gmd_gap(game, 4, 5, 0.1, 10000, Profile{x1, x1});
  result.passed = gap < tol.gmd;
  result.lines.push_back("weighted_rps " + cell_label(4, 5) + " gap=" + format_double(gap) +
                         (result.passed ? " ok" : " FAIL"));
  return result;
}

SuiteResult verify_rvu(const ExperimentConfig& cfg, const VerifyTolerances& tol) {
  cfg.validate();
  SuiteResult result{"rvu", true, {}};
  const GameSpec game = resolve_game(cfg);
  const auto trace = run_episode(game, learner_configs(cfg, game, cfg.m, cfg.n, cfg.eta_for(cfg.horizon)),
                                 cfg.horizon, resolve_init(cfg, game));
  std::vector<int> checkpoints;
  for (int c : {100, 1000, 10000}) {
    if (c <= cfg.horizon) checkpoints.push_back(c);
  }
  if (checkpoints.empty() || checkpoints.back() != cfg.horizon) checkpoints.push_back(cfg.horizon);
  for (const auto& r : rvu_check(trace, checkpoints)) {
    const bool ok = r.slack() >= tol.rvu_slack;
    result.passed = result.passed && ok;
    std::ostringstream line;
    line << game.name() << " " << cell_label(cfg.m, cfg.n) << " t=" << r.rounds
         << " lhs=" << format_double(r.lhs) << " rhs=" << format_double(r.rhs)
         << " slack=" << format_double(r.slack()) << (ok ? " ok" : " FAIL");
    result.lines.push_back(line.str());
  }
  return result;
}

SuiteResult verify_rate(const VerifyTolerances& tol) {
  SuiteResult result{"rate", true, {}};
  for (int m : kGridM) {
    for (int n : kGridN) {
      const RateEstimate est = mp_rate(m, n, 1e-3, 10000);
      const double err = std::abs(est.alpha_hat - est.alpha_theory);
      const bool ok = err <= tol.rate * std::max(1.0, std::abs(est.alpha_theory));
      result.passed = result.passed && ok;
      result.lines.push_back(cell_label(m, n) + " alpha_hat=" + format_double(est.alpha_hat) +
                             " theory=" + format_double(est.alpha_theory) +
                             (ok ? " ok" : " FAIL"));
    }
  }
  return result;
}

std::vector<SuiteResult> run_suites(const std::string& suite, const ExperimentConfig& cfg,
                                    const VerifyTolerances& tol) {
  static const char* known[] = {"recurrence", "gmd", "rvu", "rate"};
  if (suite != "all" && std::find(std::begin(known), std::end(known), suite) == std::end(known)) {
    throw ConfigError("unknown suite '" + suite + "' (expected recurrence|gmd|rvu|rate|all)");
  }
  std::vector<SuiteResult> out;
  const bool all = suite == "all";
  if (all || suite == "recurrence") out.push_back(verify_recurrence(tol));
  if (all || suite == "gmd") out.push_back(verify_gmd(tol));
  if (all || suite == "rvu") out.push_back(verify_rvu(cfg, tol));
  if (all || suite == "rate") out.push_back(verify_rate(tol));
  return out;
}

}  // namespace woftrl
