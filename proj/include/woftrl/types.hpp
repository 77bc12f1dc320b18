#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace woftrl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Feasible set of every player's strategy.
enum class Domain { kSimplex, kUnconstrained };

/// One vector per player. Used for strategies x_i and payoff gradients u_i.
using Profile = std::vector<Vector>;

// Error hierarchy. Callers distinguish configuration problems (CLI exit code 2)
// from everything else.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedMetricError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NoInteriorEquilibriumError : public Error {
 public:
  using Error::Error;
};

std::string to_string(Domain domain);
Domain parse_domain(const std::string& text);

/// True when every entry is nonnegative and the entries sum to one within tol.
bool on_simplex(const Vector& x, double tol = 1e-9);

/// Sum of squared Euclidean distances between two profiles of equal shape.
double squared_distance(const Profile& a, const Profile& b);

}  // namespace woftrl
