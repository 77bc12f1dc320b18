#include "woftrl/game.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace woftrl {

std::string to_string(Domain domain) {
  return domain == Domain::kSimplex ? "simplex" : "unconstrained";
}

Domain parse_domain(const std::string& text) {
  if (text == "simplex") return Domain::kSimplex;
  if (text == "unconstrained") return Domain::kUnconstrained;
  throw ConfigError("unknown domain '" + text + "' (expected simplex|unconstrained)");
}

bool on_simplex(const Vector& x, double tol) {
  if (x.size() == 0) return false;
  if ((x.array() < -tol).any()) return false;
  return std::abs(x.sum() - 1.0) <= tol;
}

double squared_distance(const Profile& a, const Profile& b) {
  if (a.size() != b.size()) throw DimensionError("profile player counts differ");
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw DimensionError("profile vector sizes differ");
    total += (a[i] - b[i]).squaredNorm();
  }
  return total;
}

GameSpec GameSpec::bimatrix(std::string name, Matrix a1, Matrix a2, double lipschitz,
                            std::optional<Profile> nash) {
  GameSpec g;
  g.name_ = std::move(name);
  g.action_counts_ = {static_cast<int>(a1.rows()), static_cast<int>(a2.rows())};
  g.blocks_[{0, 1}] = std::move(a1);
  g.blocks_[{1, 0}] = std::move(a2);
  g.lipschitz_ = lipschitz;
  g.nash_ = std::move(nash);
  g.bimatrix_ = true;
  g.validate();
  return g;
}

GameSpec GameSpec::polymatrix(std::string name, std::vector<int> action_counts,
                              std::map<PairKey, Matrix> blocks, double lipschitz,
                              std::optional<Profile> nash) {
  GameSpec g;
  g.name_ = std::move(name);
  g.action_counts_ = std::move(action_counts);
  g.blocks_ = std::move(blocks);
  g.lipschitz_ = lipschitz;
  g.nash_ = std::move(nash);
  g.validate();
  return g;
}

void GameSpec::validate() const {
  if (action_counts_.size() < 2) throw DimensionError("a game needs at least two players");
  for (int count : action_counts_) {
    if (count < 2) throw DimensionError("every player needs at least two actions");
  }
  const int n = num_players();
  for (const auto& [key, mat] : blocks_) {
    const auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw DimensionError("block index (" + std::to_string(i) + "," + std::to_string(j) +
                           ") out of range");
    }
    if (mat.rows() != action_counts_[i] || mat.cols() != action_counts_[j]) {
      throw DimensionError("block (" + std::to_string(i) + "," + std::to_string(j) +
                           ") has shape " + std::to_string(mat.rows()) + "x" +
                           std::to_string(mat.cols()) + ", expected " +
                           std::to_string(action_counts_[i]) + "x" +
                           std::to_string(action_counts_[j]));
    }
    if (!mat.allFinite()) throw NumericError("non-finite payoff entry");
  }
  if (!(lipschitz_ >= 0.0) || !std::isfinite(lipschitz_)) {
    throw ConfigError("lipschitz constant must be finite and >= 0");
  }
  if (nash_) {
    if (nash_->size() != action_counts_.size()) throw DimensionError("nash reference shape");
    for (int i = 0; i < n; ++i) {
      if ((*nash_)[i].size() != action_counts_[i]) throw DimensionError("nash reference shape");
    }
  }
}

Matrix GameSpec::block(int i, int j) const {
  auto it = blocks_.find({i, j});
  if (it != blocks_.end()) return it->second;
  return Matrix::Zero(action_counts_[i], action_counts_[j]);
}

Profile GameSpec::gradient(const Profile& x) const {
  if (x.size() != action_counts_.size()) {
    throw DimensionError("profile has " + std::to_string(x.size()) + " players, game has " +
                         std::to_string(action_counts_.size()));
  }
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != action_counts_[i]) {
      throw DimensionError("player " + std::to_string(i) + " vector has length " +
                           std::to_string(x[i].size()) + ", expected " +
                           std::to_string(action_counts_[i]));
    }
  }
  Profile u;
  u.reserve(x.size());
  for (int i = 0; i < num_players(); ++i) u.push_back(Vector::Zero(action_counts_[i]));
  for (const auto& [key, mat] : blocks_) {
    u[key.first].noalias() += mat * x[key.second];
  }
  return u;
}

double GameSpec::payoff(int player, const Profile& x) const {
  return x.at(player).dot(gradient(x)[player]);
}

GameSpec GameSpec::with_nash(Profile nash) const {
  GameSpec g = *this;
  g.nash_ = std::move(nash);
  g.validate();
  return g;
}

namespace {

Profile uniform_profile(const std::vector<int>& counts) {
  Profile p;
  for (int c : counts) p.push_back(Vector::Constant(c, 1.0 / c));
  return p;
}

}  // namespace

GameSpec matching_pennies() {
  Matrix a(2, 2);
  a << 1, -1,
      -1, 1;
  Matrix a2 = -a.transpose();
  GameSpec g = GameSpec::bimatrix("matching_pennies", a, a2, 0.0, uniform_profile({2, 2}));
  return GameSpec::bimatrix("matching_pennies", a, a2, lipschitz_by_enumeration(g),
                            g.nash_reference());
}

Matrix sato_a() {
  Matrix a(3, 3);
  a << 0, -1, 1,
       1, 0, -2,
      -1, 2, 0;
  return a;
}

Matrix sato_d() {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 0.1, 0.2, 0.2;
  return d;
}

GameSpec sato_game() {
  const Matrix a = sato_a();
  Matrix a1 = a + sato_d();
  Matrix a2 = -a.transpose();
  GameSpec g = GameSpec::bimatrix("sato", a1, a2, 0.0);
  return GameSpec::bimatrix("sato", a1, a2, lipschitz_by_enumeration(g));
}

GameSpec weighted_rps() {
  const Matrix a = sato_a();
  Matrix a2 = -a.transpose();
  const Vector y = nash_of_symmetric_zero_sum(a);
  GameSpec g = GameSpec::bimatrix("weighted_rps", a, a2, 0.0, Profile{y, y});
  return GameSpec::bimatrix("weighted_rps", a, a2, lipschitz_by_enumeration(g),
                            g.nash_reference());
}

GameSpec game_by_name(const std::string& name) {
  if (name == "matching_pennies") return matching_pennies();
  if (name == "sato") return sato_game();
  if (name == "weighted_rps") return weighted_rps();
  throw ConfigError("unknown game '" + name +
                    "' (expected matching_pennies|sato|weighted_rps)");
}

bool is_polymatrix_zero_sum(const GameSpec& game, double tol) {
  const int n = game.num_players();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix diff = game.block(j, i) + game.block(i, j).transpose();
      if (diff.size() > 0 && diff.cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

double lipschitz_by_enumeration(const GameSpec& game) {
  const auto& counts = game.action_counts();
  const int n = game.num_players();
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<int> idx(n, 0);
  Profile x;
  for (int c : counts) x.push_back(Vector::Zero(c));
  while (true) {
    for (int i = 0; i < n; ++i) {
      x[i].setZero();
      x[i][idx[i]] = 1.0;
    }
    const Profile u = game.gradient(x);
    for (int i = 0; i < n; ++i) {
      const double value = x[i].dot(u[i]);
      hi[i] = std::max(hi[i], value);
      lo[i] = std::min(lo[i], value);
    }
    int k = 0;
    while (k < n && ++idx[k] == counts[k]) idx[k++] = 0;
    if (k == n) break;
  }
  double range = 0.0;
  for (int i = 0; i < n; ++i) range = std::max(range, hi[i] - lo[i]);
  return range;
}

Vector nash_of_symmetric_zero_sum(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 2) throw DimensionError("expected a square matrix");
  const Eigen::Index d = a.rows();
  Matrix system(d + 1, d);
  system.topRows(d) = a;
  system.row(d).setOnes();
  Vector rhs = Vector::Zero(d + 1);
  rhs[d] = 1.0;
  Eigen::ColPivHouseholderQR<Matrix> qr(system);
  if (qr.rank() < d) throw NoInteriorEquilibriumError("equilibrium system is singular");
  const Vector y = qr.solve(rhs);
  if ((system * y - rhs).cwiseAbs().maxCoeff() > 1e-10) {
    throw NoInteriorEquilibriumError("no y on the simplex with A y = 0");
  }
  if ((y.array() <= 0.0).any()) {
    throw NoInteriorEquilibriumError("equilibrium is not interior");
  }
  return y;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows, const std::string& label) {
  if (rows.empty()) throw ConfigError("matrix block " + label + " is empty");
  const size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ConfigError("matrix block " + label + " row " + std::to_string(r + 1) + " has " +
                        std::to_string(rows[r].size()) + " entries, expected " +
                        std::to_string(cols));
    }
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace

GameSpec load_bimatrix(std::istream& in, const std::string& name) {
  std::map<std::string, std::vector<std::vector<double>>> blocks;
  std::string current;
  std::optional<double> lipschitz;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "A1" || t == "A2") {
      current = t;
      if (blocks.count(current)) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate block " + t);
      }
      blocks[current];
      continue;
    }
    std::istringstream ss(t);
    if (t.rfind("lipschitz", 0) == 0) {
      std::string key;
      double value = 0.0;
      ss >> key >> value;
      if (!ss || key != "lipschitz") {
        throw ConfigError("line " + std::to_string(line_no) + ": bad lipschitz line");
      }
      lipschitz = value;
      continue;
    }
    if (current.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": row before A1/A2 header");
    }
    std::vector<double> row;
    std::string token;
    while (ss >> token) {
      try {
        size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": '" + token +
                          "' is not a decimal number");
      }
    }
    auto& block = blocks[current];
    if (!block.empty() && block.front().size() != row.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": row has " +
                        std::to_string(row.size()) + " entries, expected " +
                        std::to_string(block.front().size()));
    }
    block.push_back(std::move(row));
  }
  if (!blocks.count("A1") || !blocks.count("A2")) {
    throw ConfigError("bimatrix file needs both A1 and A2 blocks");
  }
  if (!lipschitz) throw ConfigError("bimatrix file needs a 'lipschitz <value>' line");
  Matrix a1 = rows_to_matrix(blocks["A1"], "A1");
  Matrix a2 = rows_to_matrix(blocks["A2"], "A2");
  if (a2.rows() != a1.cols() || a2.cols() != a1.rows()) {
    throw ConfigError("A2 must have shape " + std::to_string(a1.cols()) + "x" +
                      std::to_string(a1.rows()));
  }
  return GameSpec::bimatrix(name, std::move(a1), std::move(a2), *lipschitz);
}

GameSpec load_bimatrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open game file '" + path + "'");
  return load_bimatrix(in, path);
}

}  // namespace woftrl
