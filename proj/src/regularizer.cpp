#include "woftrl/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace woftrl {

namespace {

constexpr double kLogFloor = 1e-300;

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NumericError(std::string(what) + " has non-finite entries");
}

void require_dim(const RegularizerSpec& reg, const Vector& v) {
  if (v.size() != reg.dim) {
    throw DimensionError("vector length " + std::to_string(v.size()) +
                         " does not match regularizer dim " + std::to_string(reg.dim));
  }
}

}  // namespace

std::string to_string(RegularizerKind kind) {
  return kind == RegularizerKind::kEuclidean ? "euclidean" : "entropic";
}

RegularizerKind parse_regularizer(const std::string& text) {
  if (text == "euclidean") return RegularizerKind::kEuclidean;
  if (text == "entropic") return RegularizerKind::kEntropic;
  throw ConfigError("unknown regularizer '" + text + "' (expected euclidean|entropic)");
}

void RegularizerSpec::validate() const {
  if (dim < 2) throw ConfigError("regularizer dim must be >= 2");
  if (kind == RegularizerKind::kEntropic && domain != Domain::kSimplex) {
    throw ConfigError("entropic regularizer requires domain = simplex");
  }
}

Vector simplex_project(const Vector& v) {
  require_finite(v, "projection input");
  const Eigen::Index d = v.size();
  std::vector<double> sorted(v.data(), v.data() + d);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // Largest k with sorted[k-1] - (sum_{j<k} sorted[j] - 1) / k > 0.
  double cumulative = 0.0;
  double threshold = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).cwiseMax(0.0).matrix();
}

Vector mirror_argmax(const RegularizerSpec& reg, double eta, const Vector& xtilde) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be finite and > 0");
  require_dim(reg, xtilde);
  require_finite(xtilde, "mirror step input");
  const Vector z = eta * xtilde;
  if (reg.domain == Domain::kUnconstrained) {
    if (reg.kind != RegularizerKind::kEuclidean) {
      throw ConfigError("entropic regularizer requires domain = simplex");
    }
    return z;
  }
  if (reg.kind == RegularizerKind::kEuclidean) return simplex_project(z);
  Vector e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

double regularizer_value(const RegularizerSpec& reg, const Vector& x) {
  require_dim(reg, x);
  if (reg.kind == RegularizerKind::kEuclidean) return 0.5 * x.squaredNorm();
  double h = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] < 0.0) throw DomainError("entropic regularizer needs nonnegative entries");
    if (x[j] > 0.0) h += x[j] * std::log(x[j]);
  }
  return h;
}

Vector dual_point(const RegularizerSpec& reg, const Vector& x) {
  require_dim(reg, x);
  require_finite(x, "strategy");
  if (reg.kind == RegularizerKind::kEuclidean) return x;
  if ((x.array() <= 0.0).any()) {
    throw DomainError("entropic start point must be strictly positive");
  }
  return x.array().log().matrix();
}

double bregman(const RegularizerSpec& reg, const Vector& x, const Vector& xprime) {
  require_dim(reg, x);
  require_dim(reg, xprime);
  if (reg.kind == RegularizerKind::kEuclidean) return 0.5 * (x - xprime).squaredNorm();
  double kl = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (xprime[j] <= 0.0) throw DomainError("entropic Bregman needs x' strictly positive");
    if (x[j] < 0.0) throw DomainError("entropic Bregman needs x nonnegative");
    if (x[j] > 0.0) {
      kl += x[j] * (std::log(std::max(x[j], kLogFloor)) - std::log(std::max(xprime[j], kLogFloor)));
    }
  }
  // x and x' both sum to one on the simplex; the linear terms cancel there.
  kl += xprime.sum() - x.sum();
  return std::max(kl, 0.0);
}

HRange h_range(const RegularizerSpec& reg) {
  if (reg.domain != Domain::kSimplex) {
    throw DomainError("h is unbounded on the unconstrained domain");
  }
  const double d = reg.dim;
  if (reg.kind == RegularizerKind::kEuclidean) return {0.5, 0.5 / d};
  return {0.0, -std::log(d)};
}

HRange anchored_h_range(const RegularizerSpec& reg, const Vector& anchor) {
  if (reg.domain != Domain::kSimplex) {
    throw DomainError("h is unbounded on the unconstrained domain");
  }
  require_dim(reg, anchor);
  // D(., anchor) is convex with minimum 0 at the anchor; its maximum over the
  // simplex is attained at a vertex.
  double top = 0.0;
  for (int j = 0; j < reg.dim; ++j) {
    Vector vertex = Vector::Zero(reg.dim);
    vertex[j] = 1.0;
    top = std::max(top, bregman(reg, vertex, anchor));
  }
  return {top, 0.0};
}

}  // namespace woftrl
