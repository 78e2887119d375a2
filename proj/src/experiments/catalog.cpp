#include <cmath>
#include <numbers>

#include "frechet/detail/tangent.hpp"
#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"
#include "geodesic_spaces/spd.hpp"

namespace frechet::experiments::catalog {
namespace {

Point real(double x) { return Point::vector(SpaceKind::euclidean, Eigen::VectorXd::Constant(1, x)); }

Point hyperbolic_at(const Space& h, double length, double angle) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  v[0] = length * std::cos(angle);
  v[1] = length * std::sin(angle);
  return detail::exp_map(h, reference_point(h), v);
}

Point mat2(double a, double b, double c) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, b, c;
  return Point::matrix(m);
}

Space star(double la, double lb, double lc) {
  return Space::metric_tree(TreeStructure{{"o", "a", "b", "c"}, {{"o", "a", la}, {"o", "b", lb}, {"o", "c", lc}}});
}

Point vertex(const Space& tree, std::string_view id) {
  return Point::tree(TreePosition::at_vertex(*tree.tree().find_vertex(id)));
}

std::vector<Rational> rare_tails() { return {Rational(1, 400), Rational(199, 200), Rational(1, 400)}; }

}  // namespace

Space standard_space(SpaceKind kind, std::uint64_t seed) {
  switch (kind) {
    case SpaceKind::euclidean: return Space::euclidean(3);
    case SpaceKind::hyperbolic: return Space::hyperbolic(-1.0, 2);
    case SpaceKind::spd_affine: return Space::spd_affine(3);
    case SpaceKind::sphere: return Space::sphere(1.0, 2);
    case SpaceKind::metric_tree: {
      RandomStream rng = RandomStream::derive(seed, 0x74726565);
      return random_tree(rng, 10);
    }
  }
  throw InvalidInput("unknown space kind");
}

DistributionSpec rademacher() {
  return DistributionSpec{Space::euclidean(1), WeightedSample::uniform({real(-1.0), real(1.0)}), "euclidean-rademacher"};
}

DistributionSpec hoeffding_distribution(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return rademacher();
    case SpaceKind::hyperbolic: {
      const Space h = Space::hyperbolic(-1.0, 2);
      const double third = 2.0 * std::numbers::pi / 3.0;
      return DistributionSpec{
          h, WeightedSample::uniform({hyperbolic_at(h, 1.0, 0.0), hyperbolic_at(h, 1.0, third), hyperbolic_at(h, 1.0, 2 * third)}),
          "hyperbolic-triangle"};
    }
    case SpaceKind::spd_affine:
      return DistributionSpec{Space::spd_affine(2),
                              WeightedSample::uniform({mat2(2.0, 0.5, 1.0), mat2(1.0, 0.0, 3.0), mat2(0.5, -0.2, 0.8)}),
                              "spd-three-atom"};
    case SpaceKind::metric_tree: {
      const Space t = star(1.0, 1.5, 2.0);
      return DistributionSpec{t, WeightedSample::uniform({vertex(t, "a"), vertex(t, "b"), vertex(t, "c")}),
                              "tree-star-leaves"};
    }
    case SpaceKind::sphere: break;
  }
  throw InvalidInput("Hoeffding distributions are shipped for non-positively curved spaces only");
}

DistributionSpec bernstein_distribution(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean:
      return DistributionSpec{Space::euclidean(1), WeightedSample({real(-1.0), real(0.0), real(1.0)}, rare_tails()),
                              "euclidean-rare-tails"};
    case SpaceKind::hyperbolic: {
      const Space h = Space::hyperbolic(-1.0, 2);
      return DistributionSpec{
          h, WeightedSample({hyperbolic_at(h, 1.0, std::numbers::pi), reference_point(h), hyperbolic_at(h, 1.0, 0.0)},
                            rare_tails()),
          "hyperbolic-rare-tails"};
    }
    case SpaceKind::spd_affine: {
      Eigen::MatrixXd s(2, 2);
      s << 0.6, 0.3, 0.3, -0.4;
      return DistributionSpec{Space::spd_affine(2),
                              WeightedSample({Point::matrix(spd::exp_symmetric(-s)),
                                              Point::matrix(Eigen::MatrixXd::Identity(2, 2)),
                                              Point::matrix(spd::exp_symmetric(s))},
                                             rare_tails()),
                              "spd-rare-tails"};
    }
    case SpaceKind::metric_tree: {
      const Space t = star(1.0, 1.0, 1.0);
      return DistributionSpec{t, WeightedSample({vertex(t, "a"), vertex(t, "o"), vertex(t, "b")}, rare_tails()),
                              "tree-rare-tails"};
    }
    case SpaceKind::sphere: break;
  }
  throw InvalidInput("Bernstein distributions are shipped for non-positively curved spaces only");
}

DistributionSpec spd_two_atom() {
  return DistributionSpec{Space::spd_affine(2), WeightedSample::uniform({mat2(2.0, 0.5, 1.0), mat2(1.0, 0.0, 3.0)}),
                          "spd-two-atom"};
}

std::vector<DistributionSpec> noniid_symmetric(std::size_t n) {
  std::vector<DistributionSpec> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = n == 1 ? 1.0 : 0.5 + static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(DistributionSpec{Space::euclidean(1), WeightedSample::uniform({real(-s), real(s)}),
                                   "symmetric-" + std::to_string(i)});
  }
  return out;
}

DistributionSpec sphere_cap() {
  Eigen::VectorXd a(3), b(3);
  a << std::sin(0.3), 0.0, std::cos(0.3);
  b << -std::sin(0.3), 0.0, std::cos(0.3);
  return DistributionSpec{Space::sphere(1.0, 2),
                          WeightedSample::uniform({Point::vector(SpaceKind::sphere, a), Point::vector(SpaceKind::sphere, b)}),
                          "sphere-cap-two-atom"};
}

std::vector<Point> pac_instance() {
  std::vector<Point> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(real(-1.0));
  for (int i = 0; i < 50; ++i) pts.push_back(real(1.0));
  return pts;
}

std::vector<Point> pac_small_variance_instance() {
  std::vector<Point> pts(98, real(0.0));
  pts.push_back(real(-1.0));
  pts.push_back(real(1.0));
  return pts;
}

}  // namespace frechet::experiments::catalog
