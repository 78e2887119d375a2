#include "spd.hpp"

#include <cmath>

#include "frechet/errors.hpp"

namespace frechet::spd {

Decomposition decompose(const Eigen::MatrixXd& m, bool strict) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrize(m));
  if (solver.info() != Eigen::Success) throw InvalidInput("eigendecomposition failed");
  Decomposition e{solver.eigenvalues(), solver.eigenvectors()};
  const double top = e.values.maxCoeff();
  if (strict && !(e.values.minCoeff() > 0.0)) throw InvalidInput("matrix is not positive definite");
  if (!(top > 0.0) || !std::isfinite(top)) throw InvalidInput("matrix is not positive definite");
  const double floor = kEigenFloor * top;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) e.values[i] = std::max(e.values[i], floor);
  return e;
}

Eigen::MatrixXd apply(const Decomposition& e, double (*f)(double, double), double param) {
  Eigen::VectorXd fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(e.values[i], param);
  return symmetrize(e.vectors * fv.asDiagonal() * e.vectors.transpose());
}

Eigen::MatrixXd power(const Decomposition& e, double s) {
  return apply(e, [](double x, double p) { return std::pow(x, p); }, s);
}

Eigen::MatrixXd log(const Decomposition& e) {
  return apply(e, [](double x, double) { return std::log(x); }, 0.0);
}

Eigen::MatrixXd exp_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrize(m));
  if (solver.info() != Eigen::Success) throw InvalidInput("eigendecomposition failed");
  Eigen::VectorXd ev = solver.eigenvalues().array().exp();
  return symmetrize(solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().transpose());
}

Roots roots(const Eigen::MatrixXd& a) {
  Decomposition e = decompose(a, true);
  return Roots{power(e, 0.5), power(e, -0.5)};
}

Eigen::MatrixXd whiten(const Roots& ra, const Eigen::MatrixXd& b) {
  return symmetrize(ra.inv_sqrt * b * ra.inv_sqrt);
}

double distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Roots ra = roots(a);
  Eigen::MatrixXd c = whiten(ra, b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvalidInput("eigendecomposition failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) throw InvalidInput("matrix is not positive definite");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double l = std::log(std::max(ev[i], kEigenFloor * top));
    acc += l * l;
  }
  return std::sqrt(acc);
}

Eigen::MatrixXd geodesic(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t) {
  Roots ra = roots(a);
  Eigen::MatrixXd c = whiten(ra, b);
  Eigen::MatrixXd ct = power(decompose(c, false), t);
  return symmetrize(ra.sqrt * ct * ra.sqrt);
}

}  // namespace frechet::spd
