#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "frechet/rational.hpp"
#include "frechet/space.hpp"

namespace frechet {

/// Finitely supported measure: points with exact rational weights summing to 1.
/// Zero weights are allowed and mean the atom carries no mass.
class WeightedSample {
 public:
  /// Uniform weights 1/n.
  static WeightedSample uniform(std::vector<Point> points);
  /// Throws InvalidInput unless lengths match, weights are >= 0 and the exact
  /// sum is 1.
  WeightedSample(std::vector<Point> points, std::vector<Rational> weights);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  std::vector<double> weights_as_double() const;

 private:
  std::vector<Point> points_;
  std::vector<Rational> weights_;
};

struct BarycenterResult {
  Point point;
  /// Completed cycles of the inductive recursion plus refinement steps.
  std::size_t iterations = 0;
  /// Movement of the iterate during the last cycle or refinement step.
  double final_displacement = 0.0;
  /// (1/n) sum_i d(x_i, b)^2, or the weighted version.
  double objective = 0.0;
};

enum class SolverKind {
  /// Lim–Pálfia periodic inductive recursion only, stopped when one full
  /// cycle moves the iterate by at most tol.
  cyclic,
  /// Short cyclic warm start, then an exact edge-wise minimization (trees)
  /// or tangent-mean fixed-point steps (smooth spaces) until a step moves the
  /// iterate by at most tol.
  refined,
};

struct SolverOptions {
  /// Defaults to 1e-8 * (1 + diameter of the input set).
  std::optional<double> tol;
  std::size_t max_cycles = 100000;
  SolverKind solver = SolverKind::refined;
  /// Maximum length of the replicated sequence used for weighted inputs.
  std::size_t replication_cap = 1000000;
  /// Budget for refinement steps in SolverKind::refined.
  std::size_t max_refinements = 10000;
};

/// s_1 = x_1, s_k = gamma(s_{k-1}, x_k, 1/k). Order dependent.
Point inductive_barycenter(const Space& space, std::span<const Point> points);

/// Minimizer of sum_i d(x_i, b)^2. Throws ConvergenceFailure when the budget
/// runs out before the displacement criterion is met.
BarycenterResult empirical_barycenter(const Space& space, std::span<const Point> points,
                                      const SolverOptions& options = {});

/// Barycenter of a weighted sample, built by replicating atom i exactly
/// w_i * Q times (Q the common denominator) and interleaving the copies
/// round-robin before running the cyclic recursion.
BarycenterResult weighted_barycenter(const Space& space, const WeightedSample& sample,
                                     const SolverOptions& options = {});

/// sum_i w_i d(x_i, b)^2.
double frechet_variance(const Space& space, const WeightedSample& sample, const Point& b);

/// (1/n^2) sum_{i,j} d(x_i, x_j)^2.
double pairwise_variance_estimate(const Space& space, std::span<const Point> points);

/// Largest pairwise distance.
double diameter(const Space& space, std::span<const Point> points);

/// Default solver tolerance for a point set.
double default_tolerance(const Space& space, std::span<const Point> points);

struct GridSpec {
  /// Spacing of the edge subdivision for metric trees.
  double tree_step = 0.01;
  /// Finite candidate set; required for hyperbolic, SPD and sphere.
  std::vector<Point> candidates;
};

struct BruteForceResult {
  Point point;
  double objective;
  /// Grid spacing actually used (0 for closed forms and candidate sets).
  double resolution;
  std::size_t candidates_evaluated;
};

/// Exact argmin of the Frechet objective over a finite candidate set:
/// closed-form mean for euclidean, vertex + subdivision grid for trees,
/// caller-supplied candidates otherwise (and for any kind when given).
BruteForceResult brute_force_barycenter(const Space& space, std::span<const Point> points, const GridSpec& grid);

}  // namespace frechet
