#include <cmath>

#include "frechet/detail/tangent.hpp"
#include "frechet/errors.hpp"
#include "frechet/geodesic_spaces.hpp"
#include "spd.hpp"

namespace frechet::detail {
namespace {

double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index last = x.size() - 1;
  return x.head(last).dot(y.head(last)) - x[last] * y[last];
}

// Logarithm map in ambient coordinates; also reports the distance.
Eigen::VectorXd log_map(const Space& space, const Eigen::VectorXd& b, const Eigen::VectorXd& x, double d) {
  const double r2 = space.radius() * space.radius();
  Eigen::VectorXd u;
  double un = 0.0;
  switch (space.kind()) {
    case SpaceKind::euclidean: return x - b;
    case SpaceKind::hyperbolic:
      u = x + (minkowski(x, b) / r2) * b;
      un = std::sqrt(std::max(0.0, minkowski(u, u)));
      break;
    case SpaceKind::sphere:
      u = x - (x.dot(b) / r2) * b;
      un = u.norm();
      break;
    default: throw InvalidInput("logarithm map needs a vector-valued space");
  }
  if (un == 0.0 || d == 0.0) return Eigen::VectorXd::Zero(b.size());
  return (d / un) * u;
}

double tangent_norm(const Space& space, const Eigen::VectorXd& v) {
  if (space.kind() == SpaceKind::hyperbolic) return std::sqrt(std::max(0.0, minkowski(v, v)));
  return v.norm();
}

}  // namespace

Point exp_map(const Space& space, const Point& base, const Eigen::VectorXd& v) {
  const Eigen::VectorXd& b = base.coords();
  const double n = tangent_norm(space, v);
  if (n == 0.0) return base;
  const double r = space.radius();
  switch (space.kind()) {
    case SpaceKind::euclidean: return Point::vector(space.kind(), b + v);
    case SpaceKind::hyperbolic: {
      Eigen::VectorXd p = std::cosh(n / r) * b + (r * std::sinh(n / r) / n) * v;
      const Eigen::Index last = p.size() - 1;
      p[last] = std::sqrt(r * r + p.head(last).squaredNorm());
      return Point::vector(space.kind(), std::move(p));
    }
    case SpaceKind::sphere: {
      Eigen::VectorXd p = std::cos(n / r) * b + (r * std::sin(n / r) / n) * v;
      p *= r / p.norm();
      return Point::vector(space.kind(), std::move(p));
    }
    default: throw InvalidInput("exponential map needs a vector-valued space");
  }
}

TangentStep tangent_mean_step(const Space& space, const Point& base, std::span<const Point> atoms,
                              std::span<const double> weights, double step) {
  if (atoms.size() != weights.size()) throw InvalidInput("atoms and weights differ in length");
  if (space.kind() == SpaceKind::metric_tree) throw InvalidInput("metric trees have no tangent spaces");

  double objective = 0.0;
  if (space.kind() == SpaceKind::spd_affine) {
    const spd::Roots rb = spd::roots(base.matrix());
    const auto p = static_cast<Eigen::Index>(space.dimension());
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      Eigen::MatrixXd w = spd::log(spd::decompose(spd::whiten(rb, atoms[i].matrix()), false));
      objective += weights[i] * w.squaredNorm();
      mean += weights[i] * w;
    }
    const double norm = mean.norm();
    Point next = Point::matrix(spd::symmetrize(rb.sqrt * spd::exp_symmetric(step * mean) * rb.sqrt));
    return TangentStep{std::move(next), norm, objective};
  }

  const Eigen::VectorXd& b = base.coords();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(b.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double d = dist(space, base, atoms[i]);
    objective += weights[i] * d * d;
    mean += weights[i] * log_map(space, b, atoms[i].coords(), d);
  }
  const double norm = tangent_norm(space, mean);
  return TangentStep{exp_map(space, base, step * mean), norm, objective};
}

}  // namespace frechet::detail
