#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"

using namespace frechet;
namespace ex = frechet::experiments;

namespace {

Point vec(SpaceKind k, std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x[i++] = c;
  return Point::vector(k, x);
}

Point mat2(double a, double b, double c) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, b, c;
  return Point::matrix(m);
}

Space path_abc() {
  return Space::metric_tree(TreeStructure{{"a", "b", "c"}, {{"a", "b", 1.0}, {"b", "c", 2.0}}});
}

Point vertex(const Space& t, const char* id) { return Point::tree(TreePosition::at_vertex(*t.tree().find_vertex(id))); }

Point hyperboloid(double u, double v) { return vec(SpaceKind::hyperbolic, {u, v, std::sqrt(1.0 + u * u + v * v)}); }

}  // namespace

TEST(Distance, SpdDiagonalLog) {
  const Space s = Space::spd_affine(2);
  EXPECT_NEAR(dist(s, mat2(1, 0, 1), mat2(std::exp(2.0), 0, 1)), 2.0, 1e-14);
}

TEST(Distance, SpdNonCommutingMatchesGeneralizedEigenvalues) {
  // sqrt(sum log^2 eig(A^{-1} B)) evaluated at 40 digits.
  const Space s = Space::spd_affine(2);
  EXPECT_NEAR(dist(s, mat2(2, 0.5, 1), mat2(1, 0, 3)), 1.4464449748881059637, 1e-13);
}

TEST(Distance, HyperbolicIdentityIsZero) {
  const Space h = Space::hyperbolic(-1.0, 2);
  EXPECT_EQ(dist(h, vec(SpaceKind::hyperbolic, {0, 0, 1}), vec(SpaceKind::hyperbolic, {0, 0, 1})), 0.0);
}

TEST(Distance, HyperbolicAlongAnAxis) {
  const Space h = Space::hyperbolic(-1.0, 2);
  EXPECT_NEAR(dist(h, vec(SpaceKind::hyperbolic, {0, 0, 1}), vec(SpaceKind::hyperbolic, {std::sinh(1.3), 0, std::cosh(1.3)})),
              1.3, 1e-14);
  // Curvature -4: radius 1/2, the same sheet coordinates scaled.
  const Space h4 = Space::hyperbolic(-4.0, 2);
  const double s = 0.7;
  EXPECT_NEAR(dist(h4, vec(SpaceKind::hyperbolic, {0, 0, 0.5}),
                   vec(SpaceKind::hyperbolic, {0.5 * std::sinh(2 * s), 0, 0.5 * std::cosh(2 * s)})),
              s, 1e-14);
}

TEST(Distance, HyperbolicNearbyPointsKeepRelativeAccuracy) {
  const Space h = Space::hyperbolic(-1.0, 2);
  const double eps = 1e-9;
  const double d = dist(h, vec(SpaceKind::hyperbolic, {0, 0, 1}), vec(SpaceKind::hyperbolic, {std::sinh(eps), 0, std::cosh(eps)}));
  EXPECT_NEAR(d / eps, 1.0, 1e-6);
}

TEST(Distance, SphereOrthogonalVectors) {
  const Space s = Space::sphere(1.0, 2);
  EXPECT_NEAR(dist(s, vec(SpaceKind::sphere, {1, 0, 0}), vec(SpaceKind::sphere, {0, 1, 0})), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(dist(s, vec(SpaceKind::sphere, {1, 0, 0}), vec(SpaceKind::sphere, {-1, 0, 0})), std::numbers::pi, 1e-15);
}

TEST(Distance, TreePathLength) {
  const Space t = path_abc();
  EXPECT_DOUBLE_EQ(dist(t, vertex(t, "a"), vertex(t, "c")), 3.0);
  const Point mid_bc = Point::tree(TreePosition::on_edge(t.tree().edge_between(1, 2), 0.5));
  EXPECT_DOUBLE_EQ(dist(t, vertex(t, "a"), mid_bc), 1.5);
}

TEST(Distance, MismatchedSpaceIsRejected) {
  const Space e = Space::euclidean(2);
  EXPECT_THROW(dist(e, vec(SpaceKind::euclidean, {0, 0}), vec(SpaceKind::euclidean, {0, 0, 0})), InvalidInput);
  EXPECT_THROW(dist(e, vec(SpaceKind::euclidean, {0, 0}), vec(SpaceKind::sphere, {0, 1})), InvalidInput);
}

TEST(Geodesic, EuclideanMidpoint) {
  const Space e = Space::euclidean(2);
  const Point m = geodesic_point(e, vec(SpaceKind::euclidean, {0, 0}), vec(SpaceKind::euclidean, {2, 0}), 0.5);
  EXPECT_DOUBLE_EQ(m.coords()[0], 1.0);
  EXPECT_DOUBLE_EQ(m.coords()[1], 0.0);
}

TEST(Geodesic, SpdCommutingMidpoint) {
  const Space s = Space::spd_affine(2);
  const Point m = geodesic_point(s, mat2(1, 0, 1), mat2(4, 0, 4), 0.5);
  EXPECT_NEAR((m.matrix() - 2.0 * Eigen::MatrixXd::Identity(2, 2)).norm(), 0.0, 1e-14);
}

TEST(Geodesic, SpdNonCommutingMidpointMatchesClosedForm) {
  // 2x2 closed form A#B = sqrt(ab) (bA + aB) / sqrt(det(bA + aB)), a = sqrt(det A), b = sqrt(det B).
  const Space s = Space::spd_affine(2);
  const Point m = geodesic_point(s, mat2(2, 0.5, 1), mat2(1, 0, 3), 0.5);
  EXPECT_NEAR(m.matrix()(0, 0), 1.4065617136902484918, 1e-13);
  EXPECT_NEAR(m.matrix()(0, 1), 0.25446500101635644294, 1e-13);
  EXPECT_NEAR(m.matrix()(1, 0), 0.25446500101635644294, 1e-13);
  EXPECT_NEAR(m.matrix()(1, 1), 1.675035130907181046, 1e-13);
}

TEST(Geodesic, TreeWalksThroughVertex) {
  const Space t = path_abc();
  const Point p = geodesic_point(t, vertex(t, "a"), vertex(t, "c"), 1.0 / 3.0);
  ASSERT_TRUE(p.tree_position().is_vertex());
  EXPECT_EQ(t.tree().vertex_id(p.tree_position().vertex), "b");
}

TEST(Geodesic, SphereGreatCircle) {
  const Space s = Space::sphere(1.0, 2);
  const Point p = geodesic_point(s, vec(SpaceKind::sphere, {1, 0, 0}), vec(SpaceKind::sphere, {0, 1, 0}), 1.0 / 3.0);
  EXPECT_NEAR(p.coords()[0], std::cos(std::numbers::pi / 6), 1e-15);
  EXPECT_NEAR(p.coords()[1], std::sin(std::numbers::pi / 6), 1e-15);
  EXPECT_NEAR(p.coords()[2], 0.0, 1e-15);
}

TEST(Geodesic, SphereAntipodalIsRejected) {
  const Space s = Space::sphere(1.0, 2);
  EXPECT_THROW(geodesic_point(s, vec(SpaceKind::sphere, {0, 0, 1}), vec(SpaceKind::sphere, {0, 0, -1}), 0.5),
               NonUniqueGeodesic);
}

TEST(Geodesic, ParameterOutsideUnitIntervalIsRejected) {
  const Space e = Space::euclidean(1);
  EXPECT_THROW(geodesic_point(e, vec(SpaceKind::euclidean, {0}), vec(SpaceKind::euclidean, {1}), 1.5), InvalidInput);
  EXPECT_THROW(geodesic_point(e, vec(SpaceKind::euclidean, {0}), vec(SpaceKind::euclidean, {1}), -0.1), InvalidInput);
}

TEST(Geodesic, HyperbolicStaysOnSheet) {
  const Space h = Space::hyperbolic(-1.0, 2);
  const Point p = geodesic_point(h, hyperboloid(0.3, -0.4), hyperboloid(1.2, 0.5), 0.37);
  EXPECT_FALSE(validate_point(h, p).has_value());
  EXPECT_NEAR(dist(h, hyperboloid(0.3, -0.4), p), 0.37 * dist(h, hyperboloid(0.3, -0.4), hyperboloid(1.2, 0.5)), 1e-13);
}

TEST(ProductL1, Examples) {
  const Space e = Space::euclidean(1);
  const std::vector<Point> xs{vec(SpaceKind::euclidean, {0}), vec(SpaceKind::euclidean, {1})};
  const std::vector<Point> ys{vec(SpaceKind::euclidean, {1}), vec(SpaceKind::euclidean, {3})};
  EXPECT_DOUBLE_EQ(product_l1_dist(e, xs, ys), 3.0);
  EXPECT_DOUBLE_EQ(product_l1_dist(e, xs, xs), 0.0);
  EXPECT_DOUBLE_EQ(product_l1_dist(e, std::span(xs).first(1), std::span(ys).first(1)), 1.0);
  EXPECT_THROW(product_l1_dist(e, xs, std::span(ys).first(1)), InvalidInput);
}

TEST(Validate, Diagnostics) {
  const Space s = Space::sphere(1.0, 2);
  EXPECT_FALSE(validate_point(s, vec(SpaceKind::sphere, {1, 0, 0})).has_value());
  const auto bad = validate_point(s, vec(SpaceKind::sphere, {2, 0, 0}));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->violation, Violation::sphere_norm);

  const auto spd = validate_point(Space::spd_affine(2), mat2(1, 2, 1));
  ASSERT_TRUE(spd.has_value());
  EXPECT_EQ(spd->violation, Violation::not_positive_definite);

  const auto asym = validate_point(Space::spd_affine(2), Point::matrix((Eigen::MatrixXd(2, 2) << 1, 0.5, 0, 1).finished()));
  ASSERT_TRUE(asym.has_value());
  EXPECT_EQ(asym->violation, Violation::not_symmetric);

  const Space h = Space::hyperbolic(-1.0, 2);
  EXPECT_EQ(validate_point(h, vec(SpaceKind::hyperbolic, {0, 0, 2}))->violation, Violation::hyperboloid_sheet);
  EXPECT_EQ(validate_point(h, vec(SpaceKind::hyperbolic, {0, 0, -1}))->violation, Violation::hyperboloid_upper_sheet);

  const Space t = path_abc();
  EXPECT_EQ(validate_point(t, Point::tree(TreePosition::on_edge(0, 1.5)))->violation, Violation::tree_offset);
  EXPECT_EQ(validate_point(t, Point::tree(TreePosition::at_vertex(7)))->violation, Violation::tree_index);
}

TEST(TreeStructure, InvalidTreesAreRejected) {
  EXPECT_THROW(Space::metric_tree(TreeStructure{{}, {}}), InvalidInput);
  EXPECT_THROW(Space::metric_tree(TreeStructure{{"a", "b"}, {{"a", "b", 0.0}}}), InvalidInput);
  EXPECT_THROW(Space::metric_tree(TreeStructure{{"a", "b", "c"}, {{"a", "b", 1.0}}}), InvalidInput);
  EXPECT_THROW(Space::metric_tree(TreeStructure{{"a", "b", "c"}, {{"a", "b", 1.0}, {"b", "a", 1.0}}}), InvalidInput);
  EXPECT_THROW(Space::metric_tree(TreeStructure{{"a", "a"}, {{"a", "a", 1.0}}}), InvalidInput);
  EXPECT_NO_THROW(Space::metric_tree(TreeStructure{{"solo"}, {}}));
}

TEST(Spaces, InvalidParametersAreRejected) {
  EXPECT_THROW(Space::hyperbolic(1.0, 2), InvalidInput);
  EXPECT_THROW(Space::sphere(-1.0, 2), InvalidInput);
  EXPECT_THROW(Space::spd_affine(0), InvalidInput);
  EXPECT_THROW(Space::euclidean(0), InvalidInput);
}

// Randomized properties on every implemented space.
class GeodesicProperties : public ::testing::TestWithParam<SpaceKind> {};

TEST_P(GeodesicProperties, MetricAxiomsAndConstantSpeed) {
  const Space s = ex::catalog::standard_space(GetParam(), 11);
  ex::RandomStream rng(99);
  for (int k = 0; k < 300; ++k) {
    const Point x = ex::random_point(s, rng), y = ex::random_point(s, rng), z = ex::random_point(s, rng);
    const double dxy = dist(s, x, y);
    EXPECT_EQ(dist(s, x, x), 0.0);
    EXPECT_NEAR(dxy, dist(s, y, x), 1e-12 * (1 + dxy));
    EXPECT_LE(dxy, dist(s, x, z) + dist(s, z, y) + 1e-12 * (1 + dxy));
    const double t = rng.uniform01();
    const Point g = geodesic_point(s, x, y, t);
    EXPECT_FALSE(validate_point(s, g).has_value());
    EXPECT_NEAR(dist(s, x, g), t * dxy, Tolerance::geodesic * (1 + dxy));
    EXPECT_NEAR(dist(s, geodesic_point(s, y, x, 1 - t), g), 0.0, Tolerance::geodesic * (1 + dxy));
    EXPECT_LE(dist(s, geodesic_point(s, x, y, 0.0), x), Tolerance::point * (1 + dxy));
    EXPECT_LE(dist(s, geodesic_point(s, x, y, 1.0), y), Tolerance::point * (1 + dxy));
  }
}

TEST_P(GeodesicProperties, MidpointInequalityOnNonPositivelyCurvedSpaces) {
  const Space s = ex::catalog::standard_space(GetParam(), 11);
  if (!s.is_npc()) GTEST_SKIP() << "positively curved";
  ex::RandomStream rng(5);
  const auto r = ex::check_midpoint_inequality(s, rng, 500);
  EXPECT_EQ(r.violations, 0u) << r.witness;
}

INSTANTIATE_TEST_SUITE_P(AllSpaces, GeodesicProperties,
                         ::testing::Values(SpaceKind::euclidean, SpaceKind::hyperbolic, SpaceKind::spd_affine,
                                           SpaceKind::metric_tree, SpaceKind::sphere),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(MidpointInequality, EuclideanEqualityAndTreeExactness) {
  // Parallelogram law: the inequality is an equality in Euclidean space.
  const Space e = Space::euclidean(3);
  ex::RandomStream rng(3);
  for (int k = 0; k < 100; ++k) {
    const Point x = ex::random_point(e, rng), y = ex::random_point(e, rng), z = ex::random_point(e, rng);
    const double lhs = std::pow(dist(e, z, geodesic_point(e, x, y, 0.5)), 2);
    const double rhs = 0.5 * (std::pow(dist(e, z, x), 2) + std::pow(dist(e, z, y), 2)) - 0.25 * std::pow(dist(e, x, y), 2);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + rhs));
  }
}
