#pragma once

#include <optional>
#include <span>
#include <string>

#include "frechet/space.hpp"

namespace frechet {

/// Numerical tolerances shared by the geometry layer.
struct Tolerance {
  /// Relative slack on point invariants (sheet, norm, symmetry).
  static constexpr double point = 1e-9;
  /// Absolute slack (scaled by 1 + d(x,y)) on geodesic identities.
  static constexpr double geodesic = 1e-8;
  /// Base slack for the midpoint inequality, scaled by 1 + squared triple scale.
  static constexpr double npc = 1e-8;
};

enum class Violation {
  space_mismatch,
  wrong_size,
  not_finite,
  hyperboloid_sheet,
  hyperboloid_upper_sheet,
  not_symmetric,
  not_positive_definite,
  sphere_norm,
  tree_index,
  tree_offset,
};

std::string_view to_string(Violation v);

struct Diagnostic {
  Violation violation;
  std::string message;
};

/// Checks the invariants of `p` for `space`; nullopt when valid.
std::optional<Diagnostic> validate_point(const Space& space, const Point& p);

/// Throws InvalidInput with the diagnostic message if `p` is not valid.
void require_valid(const Space& space, const Point& p);

/// Geodesic distance.
///
/// Euclidean: norm of the difference. Hyperbolic: arc length on the
/// hyperboloid, evaluated through the chord form 2R asinh(|x-y|_M / 2R).
/// SPD: ||log(A^{-1/2} B A^{-1/2})||_F. Tree: unique-path length. Sphere:
/// great-circle arc length, in [0, pi R].
double dist(const Space& space, const Point& x, const Point& y);

/// Point at fraction t of the geodesic from x to y (t = 0 gives x).
/// Throws NonUniqueGeodesic for antipodal sphere points and InvalidInput for
/// t outside [0, 1].
Point geodesic_point(const Space& space, const Point& x, const Point& y, double t);

/// Sum of coordinatewise distances on the product space M^n.
double product_l1_dist(const Space& space, std::span<const Point> xs, std::span<const Point> ys);

/// Puts a tree position into canonical form (vertex when the offset sits on
/// an endpoint); other kinds are returned unchanged.
Point canonical(const Space& space, Point p);

/// Base point used by the random generators: origin, identity, north pole,
/// (0, ..., 0, R) on the hyperboloid, or the first tree vertex.
Point reference_point(const Space& space);

}  // namespace frechet
