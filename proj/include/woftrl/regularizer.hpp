#pragma once

#include <string>

#include "woftrl/types.hpp"

namespace woftrl {

enum class RegularizerKind { kEuclidean, kEntropic };

std::string to_string(RegularizerKind kind);
RegularizerKind parse_regularizer(const std::string& text);

/// h together with the set it is maximized over.
///
/// euclidean: h(x) = ||x||^2 / 2, on the simplex or all of R^d.
/// entropic:  h(x) = <x, log x>, simplex only (1-strongly convex in l1 there).
struct RegularizerSpec {
  RegularizerKind kind = RegularizerKind::kEuclidean;
  Domain domain = Domain::kSimplex;
  int dim = 2;

  /// Throws ConfigError for entropic + unconstrained or dim < 2.
  void validate() const;
};

struct HRange {
  double h_max = 0.0;
  double h_min = 0.0;
  double width() const { return h_max - h_min; }
};

/// argmin over the probability simplex of ||x - v||_2 (sort-and-threshold).
Vector simplex_project(const Vector& v);

/// argmax_x eta <x, xtilde> - h(x) over the regularizer's domain.
///
/// unconstrained euclidean: eta * xtilde
/// simplex euclidean:       simplex_project(eta * xtilde)
/// simplex entropic:        softmax(eta * xtilde), shifted by the max entry
Vector mirror_argmax(const RegularizerSpec& reg, double eta, const Vector& xtilde);

/// h(x). Entropic uses 0 log 0 = 0.
double regularizer_value(const RegularizerSpec& reg, const Vector& x);

/// A dual point y with mirror_argmax(reg, 1, y) = x, i.e. grad h(x) up to the
/// simplex's normal direction. Entropic requires x strictly positive.
Vector dual_point(const RegularizerSpec& reg, const Vector& x);

/// h(x) - h(x') - <x - x', grad h(x')>; 1/2 ||x - x'||^2 or KL(x || x').
/// Throws DomainError for entropic when x' has a zero entry.
double bregman(const RegularizerSpec& reg, const Vector& x, const Vector& xprime);

/// Extremes of h over the simplex. Throws DomainError for unconstrained.
HRange h_range(const RegularizerSpec& reg);

/// Extremes of the anchored regularizer x -> D_h(x, anchor) over the simplex.
///
/// A learner started at x^1 runs FTRL on this function rather than on h, so it
/// is the range that enters the regret constants. Equals h_range's width when
/// the anchor minimizes h (the uniform point).
HRange anchored_h_range(const RegularizerSpec& reg, const Vector& anchor);

}  // namespace woftrl
