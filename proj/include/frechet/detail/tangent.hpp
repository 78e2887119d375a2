#pragma once

#include <span>

#include "frechet/space.hpp"

namespace frechet::detail {

/// Result of moving a base point along the weighted mean of the logarithms of
/// a set of atoms: exp_b(step * sum_i w_i log_b(x_i)).
struct TangentStep {
  Point point;
  /// Length of the full (step = 1) mean tangent vector.
  double mean_log_norm;
  /// Weighted mean of d(b, x_i)^2 at the base point.
  double objective_at_base;
};

/// Defined for the smooth kinds (euclidean, hyperbolic, SPD, sphere).
/// Weights must sum to one.
TangentStep tangent_mean_step(const Space& space, const Point& base, std::span<const Point> atoms,
                              std::span<const double> weights, double step);

/// Exponential map at `base` of a tangent vector given in ambient
/// coordinates (vector kinds only).
Point exp_map(const Space& space, const Point& base, const Eigen::VectorXd& v);

}  // namespace frechet::detail
