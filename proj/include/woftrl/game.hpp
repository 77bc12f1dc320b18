#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "woftrl/types.hpp"

namespace woftrl {

/// A normal-form game given by its payoff-gradient oracle.
///
/// Payoffs are multi-linear, so each player's gradient u_i is linear in the
/// other players' strategies and independent of x_i. Two storage forms cover
/// everything the library needs:
///
///  - bimatrix: u_1 = A1 x_2 and u_2 = A2 x_1. General-sum games (Sato's game)
///    live here because they have no single zero-sum matrix.
///  - polymatrix: u_i = sum over i' != i of A_(ii') x_{i'}.
///
/// A GameSpec is immutable once built and can be shared between threads.
class GameSpec {
 public:
  using PairKey = std::pair<int, int>;

  static GameSpec bimatrix(std::string name, Matrix a1, Matrix a2, double lipschitz,
                           std::optional<Profile> nash = std::nullopt);
  static GameSpec polymatrix(std::string name, std::vector<int> action_counts,
                             std::map<PairKey, Matrix> blocks, double lipschitz,
                             std::optional<Profile> nash = std::nullopt);

  const std::string& name() const { return name_; }
  int num_players() const { return static_cast<int>(action_counts_.size()); }
  const std::vector<int>& action_counts() const { return action_counts_; }
  double lipschitz() const { return lipschitz_; }
  const std::optional<Profile>& nash_reference() const { return nash_; }
  bool is_bimatrix() const { return bimatrix_; }

  /// Gradient matrix A_(ii'); zero when the pair does not interact.
  Matrix block(int i, int j) const;

  /// u(x). Throws DimensionError on shape mismatch.
  Profile gradient(const Profile& x) const;

  /// U_i(x) = <x_i, u_i(x)>.
  double payoff(int player, const Profile& x) const;

  /// Copy with a different reference equilibrium.
  GameSpec with_nash(Profile nash) const;

 private:
  GameSpec() = default;
  void validate() const;

  std::string name_;
  std::vector<int> action_counts_;
  std::map<PairKey, Matrix> blocks_;
  double lipschitz_ = 0.0;
  std::optional<Profile> nash_;
  bool bimatrix_ = false;
};

GameSpec matching_pennies();

/// Rock-paper-scissors with draw bonuses: u_1 = (A + D) x_2, u_2 = -A^T x_1.
GameSpec sato_game();

/// Sato's game with the draw term D removed; poly-matrix zero-sum.
GameSpec weighted_rps();

/// The antisymmetric part A shared by sato_game and weighted_rps.
Matrix sato_a();
Matrix sato_d();

/// Builds "matching_pennies", "sato" or "weighted_rps". Throws ConfigError otherwise.
GameSpec game_by_name(const std::string& name);

/// True iff A_(i'i) = -A_(ii')^T for every ordered pair, within tol.
bool is_polymatrix_zero_sum(const GameSpec& game, double tol = 1e-12);

/// max_i (max_x U_i - min_x U_i), enumerated over pure profiles. Exact for
/// multi-linear payoffs since the extremes sit at simplex vertices.
double lipschitz_by_enumeration(const GameSpec& game);

/// Interior y on the simplex with A y = 0 for antisymmetric A.
/// Throws NoInteriorEquilibriumError if the system is singular or y leaves the
/// open simplex.
Vector nash_of_symmetric_zero_sum(const Matrix& a);

/// Reads a custom bimatrix game from text.
///
/// Format: two blocks, each introduced by a header line "A1" or "A2", followed
/// by rows of whitespace-separated decimals. Blank lines and lines starting with
/// '#' are ignored. A1 has shape |A_1| x |A_2| and gives u_1 = A1 x_2; A2 has
/// shape |A_2| x |A_1| and gives u_2 = A2 x_1. A line "lipschitz <value>"
/// giving L is required.
GameSpec load_bimatrix(std::istream& in, const std::string& name = "custom");
GameSpec load_bimatrix_file(const std::string& path);

}  // namespace woftrl
