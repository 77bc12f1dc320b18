#include <random>
#include <sstream>

#include "doctest.h"
#include "woftrl/game.hpp"

using namespace woftrl;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

Vector random_simplex(std::mt19937_64& rng, int d) {
  std::exponential_distribution<double> e(1.0);
  Vector v(d);
  for (int j = 0; j < d; ++j) v[j] = e(rng);
  return v / v.sum();
}

Profile random_profile(std::mt19937_64& rng, const GameSpec& g) {
  Profile p;
  for (int d : g.action_counts()) p.push_back(random_simplex(rng, d));
  return p;
}

}  // namespace

TEST_CASE("matching pennies gradients") {
  const GameSpec mp = matching_pennies();
  auto u = mp.gradient({vec({0.5, 0.5}), vec({0.5, 0.5})});
  CHECK(u[0].cwiseAbs().maxCoeff() == 0.0);

  u = mp.gradient({vec({1, 0}), vec({1, 0})});
  CHECK(u[0].isApprox(vec({1, -1})));
  CHECK(u[1].isApprox(vec({-1, 1})));
}

TEST_CASE("matching pennies constants") {
  const GameSpec mp = matching_pennies();
  CHECK(mp.lipschitz() == 2.0);
  CHECK(lipschitz_by_enumeration(mp) == 2.0);
  REQUIRE(mp.nash_reference());
  CHECK((*mp.nash_reference())[0].isApprox(vec({0.5, 0.5})));
  CHECK((*mp.nash_reference())[1].isApprox(vec({0.5, 0.5})));
  CHECK(is_polymatrix_zero_sum(mp));
}

TEST_CASE("sato game") {
  const GameSpec sato = sato_game();
  CHECK(sato_a()(1, 2) == -2.0);
  CHECK(sato_d()(1, 1) == 0.2);
  const auto u = sato.gradient({vec({1, 0, 0}), vec({1, 0, 0})});
  CHECK((u[0] - vec({0.1, 1, -1})).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_FALSE(is_polymatrix_zero_sum(sato));
  CHECK_FALSE(sato.nash_reference());
  CHECK(sato.lipschitz() == doctest::Approx(lipschitz_by_enumeration(sato)));
}

TEST_CASE("weighted rps") {
  const GameSpec rps = weighted_rps();
  CHECK(is_polymatrix_zero_sum(rps));
  CHECK((sato_a() + sato_a().transpose()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(rps.nash_reference());
  CHECK(((*rps.nash_reference())[0] - vec({0.5, 0.25, 0.25})).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(rps.lipschitz() == 4.0);
}

TEST_CASE("nash of symmetric zero-sum matrices") {
  CHECK((nash_of_symmetric_zero_sum(sato_a()) - vec({0.5, 0.25, 0.25})).cwiseAbs().maxCoeff() <
        1e-12);
  Matrix rps(3, 3);
  rps << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  CHECK((nash_of_symmetric_zero_sum(rps) - Vector::Constant(3, 1.0 / 3)).cwiseAbs().maxCoeff() <
        1e-12);
  Matrix mp(2, 2);
  mp << 1, -1, -1, 1;
  CHECK((nash_of_symmetric_zero_sum(mp) - vec({0.5, 0.5})).cwiseAbs().maxCoeff() < 1e-12);

  Matrix dominated(2, 2);
  dominated << 0, 1, -1, 0;
  CHECK_THROWS_AS(nash_of_symmetric_zero_sum(dominated), NoInteriorEquilibriumError);
}

TEST_CASE("gradient shape mismatch") {
  const GameSpec mp = matching_pennies();
  CHECK_THROWS_AS(mp.gradient({vec({1, 0})}), DimensionError);
  CHECK_THROWS_AS(mp.gradient({vec({1, 0, 0}), vec({1, 0})}), DimensionError);
}

TEST_CASE("game_by_name") {
  CHECK(game_by_name("matching_pennies").name() == "matching_pennies");
  CHECK(game_by_name("sato").name() == "sato");
  CHECK(game_by_name("weighted_rps").name() == "weighted_rps");
  CHECK_THROWS_AS(game_by_name("chess"), ConfigError);
}

TEST_CASE("polymatrix three-player zero-sum") {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  std::map<GameSpec::PairKey, Matrix> blocks;
  blocks[{0, 1}] = a;
  blocks[{1, 0}] = -a.transpose();
  blocks[{1, 2}] = 2 * a;
  blocks[{2, 1}] = -2 * a.transpose();
  const GameSpec g = GameSpec::polymatrix("ring", {2, 2, 2}, blocks, 6.0);
  CHECK(is_polymatrix_zero_sum(g));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const Profile x = random_profile(rng, g);
    const Profile u = g.gradient(x);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) total += x[i].dot(u[i]);
    CHECK(std::abs(total) < 1e-12);
  }
}

TEST_CASE("property: multi-linearity") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (const GameSpec& g : {matching_pennies(), sato_game(), weighted_rps()}) {
    for (int k = 0; k < 200; ++k) {
      Profile x = random_profile(rng, g);
      const Vector xa = random_simplex(rng, g.action_counts()[1]);
      const Vector xb = random_simplex(rng, g.action_counts()[1]);
      const double a = coef(rng), b = coef(rng);
      x[1] = a * xa + b * xb;
      const Vector mixed = g.gradient(x)[0];
      x[1] = xa;
      const Vector ua = g.gradient(x)[0];
      x[1] = xb;
      const Vector ub = g.gradient(x)[0];
      CHECK((mixed - a * ua - b * ub).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("property: zero-sum identity") {
  std::mt19937_64 rng(2);
  for (const GameSpec& g : {matching_pennies(), weighted_rps()}) {
    for (int k = 0; k < 1000; ++k) {
      const Profile x = random_profile(rng, g);
      const Profile u = g.gradient(x);
      CHECK(std::abs(x[0].dot(u[0]) + x[1].dot(u[1])) < 1e-12);
    }
  }
}

TEST_CASE("property: Lipschitz bound") {
  std::mt19937_64 rng(3);
  for (const GameSpec& g : {matching_pennies(), sato_game(), weighted_rps()}) {
    for (int k = 0; k < 1000; ++k) {
      const Profile x = random_profile(rng, g);
      const Profile y = random_profile(rng, g);
      const Profile ux = g.gradient(x), uy = g.gradient(y);
      double du = 0.0;
      for (int i = 0; i < 2; ++i) du += (ux[i] - uy[i]).squaredNorm();
      CHECK(std::sqrt(du) <= g.lipschitz() * std::sqrt(squared_distance(x, y)) + 1e-12);
    }
  }
}

TEST_CASE("load_bimatrix") {
  std::istringstream ok(
      "# matching pennies\n"
      "lipschitz 2\n"
      "A1\n 1 -1\n-1 1\n\n"
      "A2\n-1 1\n 1 -1\n");
  const GameSpec g = load_bimatrix(ok, "mp_text");
  CHECK(g.name() == "mp_text");
  CHECK(g.lipschitz() == 2.0);
  CHECK(is_polymatrix_zero_sum(g));
  CHECK(g.block(0, 1).isApprox(matching_pennies().block(0, 1)));

  std::istringstream missing_l("A1\n1 -1\n-1 1\nA2\n-1 1\n1 -1\n");
  CHECK_THROWS_AS(load_bimatrix(missing_l), ConfigError);

  std::istringstream ragged("lipschitz 2\nA1\n1 -1\n-1\nA2\n-1 1\n1 -1\n");
  try {
    load_bimatrix(ragged);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }

  std::istringstream junk("lipschitz 2\nA1\n1 x\n");
  CHECK_THROWS_AS(load_bimatrix(junk), ConfigError);
  CHECK_THROWS_AS(load_bimatrix_file("/nonexistent/game.txt"), ConfigError);
}
