#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "doctest.h"
#include "woftrl/config.hpp"
#include "woftrl/csv.hpp"

using namespace woftrl;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config stream") {
  ExperimentConfig cfg;
  std::istringstream in(
      "# fig 1\n"
      "game = sato\n"
      "regularizer = entropic   # trailing comment\n"
      "\n"
      "T = 1e5\n"
      "eta = 0.01\n"
      "m_range = 0:3\n"
      "n_range = 1,5,9\n"
      "T_list = 10^3, 10^3.5, 1e4\n"
      "init = 0.2,0.5,0.3\n");
  apply_config_stream(cfg, in, "test.cfg");
  CHECK(cfg.game == "sato");
  CHECK(cfg.regularizer == RegularizerKind::kEntropic);
  CHECK(cfg.horizon == 100000);
  CHECK(cfg.eta == 0.01);
  CHECK(cfg.m_range == std::vector<int>{0, 1, 2, 3});
  CHECK(cfg.n_range == std::vector<int>{1, 5, 9});
  CHECK(cfg.t_list == std::vector<int>{1000, 3162, 10000});
  CHECK(cfg.init == "0.2,0.5,0.3");
}

TEST_CASE("config errors name the key and line") {
  ExperimentConfig cfg;
  std::istringstream unknown("game = sato\netta = 0.1\n");
  const std::string msg = error_of([&] { apply_config_stream(cfg, unknown, "x.cfg"); });
  CHECK(msg.find("x.cfg:2") != std::string::npos);
  CHECK(msg.find("'etta'") != std::string::npos);

  std::istringstream no_eq("game sato\n");
  CHECK(error_of([&] { apply_config_stream(cfg, no_eq, "y.cfg"); }).find("y.cfg:1") !=
        std::string::npos);

  CHECK(error_of([&] { apply_setting(cfg, "eta", "fast"); }).find("'eta'") != std::string::npos);
  CHECK(error_of([&] { apply_setting(cfg, "regularizer", "tsallis"); }).find("'regularizer'") !=
        std::string::npos);
  CHECK_THROWS_AS(apply_setting(cfg, "m_range", "5:2"), ConfigError);
  CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent.cfg"), ConfigError);
}

TEST_CASE("validation") {
  ExperimentConfig cfg;
  cfg.eta = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.horizon = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.regularizer = RegularizerKind::kEntropic;
  cfg.domain = Domain::kUnconstrained;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.m_range = {-1};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("overrides beat file values") {
  ExperimentConfig cfg;
  std::istringstream in("eta = 0.5\nm = 3\n");
  apply_config_stream(cfg, in, "f");
  const auto [key, value] = split_override("eta=0.25");
  apply_setting(cfg, key, value);
  CHECK(cfg.eta == 0.25);
  CHECK(cfg.m == 3);
  CHECK_THROWS_AS(split_override("eta"), ConfigError);
}

TEST_CASE("every documented key is accepted") {
  ExperimentConfig cfg;
  const std::map<std::string, std::string> sample = {
      {"game", "weighted_rps"}, {"game_file", ""},       {"regularizer", "euclidean"},
      {"domain", "simplex"},    {"algorithm", "gftrl"},  {"T", "100"},
      {"eta", "0.1"},           {"eta_rule", "constant"}, {"eta_scale", "1"},
      {"m", "1"},               {"n", "2"},              {"m_range", "0:2"},
      {"n_range", "1:3"},       {"T_list", "10,100"},    {"init", "uniform"},
      {"seed", "4"},            {"out", "x.csv"}};
  for (const auto& [key, help] : config_keys()) {
    REQUIRE(sample.count(key) == 1);
    CHECK_NOTHROW(apply_setting(cfg, key, sample.at(key)));
  }
  CHECK(sample.size() == config_keys().size());
}

TEST_CASE("eta rules") {
  ExperimentConfig cfg;
  cfg.eta = 0.01;
  CHECK(cfg.eta_for(10000) == 0.01);
  cfg.eta_rule = EtaRule::kInvSqrtT;
  CHECK(cfg.eta_for(10000) == doctest::Approx(0.01));
  CHECK(cfg.eta_for(100) == doctest::Approx(0.1));
  cfg.eta_scale = 2.0;
  CHECK(cfg.eta_for(100) == doctest::Approx(0.2));
  CHECK_THROWS_AS(parse_eta_rule("sqrt"), ConfigError);
}

TEST_CASE("int lists and counts") {
  CHECK(parse_int_list("0:30").size() == 31);
  CHECK(parse_int_list("1:35").size() == 35);
  CHECK(parse_int_list("3") == std::vector<int>{3});
  CHECK(parse_count("10^4.5") == 31623);
  CHECK(parse_count("1e5") == 100000);
  CHECK(parse_count("20000") == 20000);
  CHECK_THROWS_AS(parse_count("-5"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("a,b"), ConfigError);
}

TEST_CASE("init profiles") {
  ExperimentConfig cfg;
  const GameSpec mp = matching_pennies();
  CHECK_FALSE(resolve_init(cfg, mp));

  cfg.init = "uniform";
  CHECK((*resolve_init(cfg, mp))[1][0] == 0.5);

  cfg.init = "0.55,0.45";
  auto p = *resolve_init(cfg, mp);
  CHECK(p[0][0] == 0.55);
  CHECK(p[1][1] == 0.45);

  cfg.init = "1,0;0.3,0.7";
  p = *resolve_init(cfg, mp);
  CHECK(p[0][0] == 1.0);
  CHECK(p[1][0] == 0.3);

  cfg.init = "random";
  cfg.seed = 9;
  const auto r1 = *resolve_init(cfg, weighted_rps());
  const auto r2 = *resolve_init(cfg, weighted_rps());
  CHECK(r1[0] == r2[0]);
  CHECK(on_simplex(r1[0]));
  CHECK(r1[0] != r1[1]);

  cfg.init = "0.6,0.6";
  CHECK_THROWS_AS(resolve_init(cfg, mp), ConfigError);
  cfg.init = "0.2,0.5,0.3";
  CHECK_THROWS_AS(resolve_init(cfg, mp), ConfigError);
  cfg.init = "1,0;1,0;1,0";
  CHECK_THROWS_AS(resolve_init(cfg, mp), ConfigError);

  cfg.domain = Domain::kUnconstrained;
  cfg.init = "2,-1";
  CHECK((*resolve_init(cfg, mp))[0][0] == 2.0);
  cfg.init = "random";
  CHECK_THROWS_AS(resolve_init(cfg, mp), ConfigError);
}

TEST_CASE("learner configs from an experiment config") {
  ExperimentConfig cfg;
  cfg.regularizer = RegularizerKind::kEntropic;
  cfg.algorithm = Algorithm::kGmd;
  const auto cfgs = learner_configs(cfg, weighted_rps(), 4, 5, 0.1);
  REQUIRE(cfgs.size() == 2);
  CHECK(cfgs[0].regularizer.dim == 3);
  CHECK(cfgs[1].delay == 4);
  CHECK(cfgs[1].weight == 5);
  CHECK(cfgs[1].algorithm == Algorithm::kGmd);
  CHECK_THROWS_AS(learner_configs(cfg, weighted_rps(), 4, 5, 0.0), ConfigError);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3, 1e-300, 123456789.125, -2.5e17, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv writer") {
  std::ostringstream out;
  CsvWriter csv(out, {"a", "b", "c"});
  csv.row(1, 0.5, std::string("x"));
  CHECK(out.str() == "a,b,c\n1,0.5,x\n");
  CHECK_THROWS(csv.row(1, 2));
}
