#pragma once

#include <Eigen/Dense>

// Matrix functions for the affine-invariant SPD geometry. All fractional
// powers and logarithms go through a symmetric eigendecomposition with the
// spectrum clamped below at kEigenFloor * (largest eigenvalue), and every
// result is re-symmetrized.
namespace frechet::spd {

inline constexpr double kEigenFloor = 1e-12;

struct Decomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Eigendecomposition of (M + M^T)/2. Throws InvalidInput when the matrix is
/// not positive definite (an eigenvalue <= 0 before clamping) and `strict`.
Decomposition decompose(const Eigen::MatrixXd& m, bool strict);

Eigen::MatrixXd apply(const Decomposition& e, double (*f)(double, double), double param);

Eigen::MatrixXd power(const Decomposition& e, double s);
Eigen::MatrixXd log(const Decomposition& e);
Eigen::MatrixXd exp_symmetric(const Eigen::MatrixXd& m);

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

/// Square root and inverse square root of A, sharing one decomposition.
struct Roots {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;
};
Roots roots(const Eigen::MatrixXd& a);

/// A^{-1/2} B A^{-1/2}, symmetrized.
Eigen::MatrixXd whiten(const Roots& ra, const Eigen::MatrixXd& b);

double distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
/// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
Eigen::MatrixXd geodesic(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t);

}  // namespace frechet::spd
