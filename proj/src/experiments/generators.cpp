#include <cmath>
#include <numbers>

#include "frechet/detail/tangent.hpp"
#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"
#include "geodesic_spaces/spd.hpp"

namespace frechet::experiments {
namespace {

Eigen::VectorXd unit_direction(RandomStream& rng, Eigen::Index size) {
  Eigen::VectorXd u(size);
  do {
    for (Eigen::Index i = 0; i < size; ++i) u[i] = rng.normal();
  } while (u.norm() == 0.0);
  return u / u.norm();
}

Point random_cap_point(const Space& space, RandomStream& rng) {
  const Eigen::VectorXd pole = reference_point(space).coords();
  const double r = space.radius();
  const std::size_t d = space.dimension();
  const double theta_max = std::numbers::pi / 4.0;
  // Polar angle has density proportional to sin^{d-1}(theta) on the cap.
  double theta;
  for (;;) {
    theta = rng.uniform(0.0, theta_max);
    const double accept = std::pow(std::sin(theta) / std::sin(theta_max), static_cast<double>(d) - 1.0);
    if (rng.uniform01() < accept) break;
  }
  Eigen::VectorXd u = Eigen::VectorXd::Zero(pole.size());
  u.head(pole.size() - 1) = unit_direction(rng, pole.size() - 1);
  Eigen::VectorXd p = std::cos(theta) * pole + r * std::sin(theta) * u;
  p *= r / p.norm();
  return Point::vector(SpaceKind::sphere, std::move(p));
}

}  // namespace

Point random_point(const Space& space, RandomStream& rng) {
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      Eigen::VectorXd v(space.dimension());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
      return Point::vector(SpaceKind::euclidean, std::move(v));
    }
    case SpaceKind::hyperbolic: {
      const Point base = reference_point(space);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(space.ambient_size());
      v.head(space.dimension()) = rng.uniform(0.0, 2.0) * unit_direction(rng, space.dimension());
      return detail::exp_map(space, base, v);
    }
    case SpaceKind::spd_affine: {
      const auto p = static_cast<Eigen::Index>(space.dimension());
      Eigen::MatrixXd s(p, p);
      for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = i; j < p; ++j) s(i, j) = s(j, i) = rng.uniform(-1.0, 1.0);
      return Point::matrix(spd::exp_symmetric(s));
    }
    case SpaceKind::metric_tree: {
      const MetricTree& tree = space.tree();
      if (tree.edge_count() == 0) return Point::tree(TreePosition::at_vertex(0));
      const std::size_t e = rng.uniform_int(tree.edge_count());
      const double offset = rng.uniform(0.0, tree.edge(e).length);
      return canonical(space, Point::tree(TreePosition::on_edge(e, offset)));
    }
    case SpaceKind::sphere: return random_cap_point(space, rng);
  }
  throw InvalidInput("unknown space kind");
}

Space random_tree(RandomStream& rng, std::size_t vertices) {
  if (vertices == 0) throw InvalidInput("a tree needs at least one vertex");
  TreeStructure t;
  for (std::size_t i = 0; i < vertices; ++i) t.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i < vertices; ++i) {
    const std::size_t parent = rng.uniform_int(i);
    t.edges.push_back(TreeEdge{t.vertices[parent], t.vertices[i], rng.uniform(0.5, 2.0)});
  }
  return Space::metric_tree(std::move(t));
}

}  // namespace frechet::experiments
