#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "frechet/concentration_bounds.hpp"
#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"

using namespace frechet;
using namespace frechet::experiments;

namespace {

Point real(double x) { return Point::vector(SpaceKind::euclidean, Eigen::VectorXd::Constant(1, x)); }

DistributionSpec line(std::vector<double> xs, std::vector<Rational> w = {}) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(real(x));
  WeightedSample s = w.empty() ? WeightedSample::uniform(std::move(pts)) : WeightedSample(std::move(pts), std::move(w));
  return DistributionSpec{Space::euclidean(1), std::move(s), "line"};
}

ExperimentConfig concentration(DistributionSpec d, std::size_t n, std::size_t trials) {
  ExperimentConfig c;
  c.distributions = {std::move(d)};
  c.n = n;
  c.trials = trials;
  c.seed = 20240611;
  return c;
}

}  // namespace

TEST(Random, StreamsAreReproducibleAndDistinct) {
  RandomStream a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  RandomStream d0 = RandomStream::derive(5, 0), d1 = RandomStream::derive(5, 1);
  EXPECT_NE(d0.next(), d1.next());
}

TEST(Random, UniformRanges) {
  RandomStream r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(r.uniform_int(7), 7u);
  }
}

TEST(Random, NormalMoments) {
  RandomStream r(2);
  const int n = 400000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Random, PointsAreValidInEveryStandardSpace) {
  for (SpaceKind k : {SpaceKind::euclidean, SpaceKind::hyperbolic, SpaceKind::spd_affine, SpaceKind::metric_tree,
                      SpaceKind::sphere}) {
    const Space s = catalog::standard_space(k, 1);
    RandomStream r(3);
    for (int i = 0; i < 200; ++i) EXPECT_FALSE(validate_point(s, random_point(s, r)).has_value()) << to_string(k);
  }
}

TEST(Sampling, FrequenciesMatchWeights) {
  const DistributionSpec d = line({0, 1, 2}, {Rational(1, 8), Rational(5, 8), Rational(1, 4)});
  RandomStream r(99);
  const int n = 1000000;
  std::array<int, 3> counts{};
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(sample(d, r).coords()[0])];
  const std::array<double, 3> p{0.125, 0.625, 0.25};
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(counts[i] / double(n), p[i], 5 * std::sqrt(p[i] * (1 - p[i]) / n));
}

TEST(Sampling, ZeroWeightAtomIsNeverDrawn) {
  const DistributionSpec d = line({3, 4}, {Rational(1), Rational(0)});
  RandomStream r(4);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(sample(d, r).coords()[0], 3.0);
}

TEST(Sampling, DistributionStats) {
  const DistributionStats s = distribution_stats(line({-1, 1}), real(0));
  EXPECT_DOUBLE_EQ(s.sigma, 1.0);
  EXPECT_DOUBLE_EQ(s.C, 1.0);
  EXPECT_DOUBLE_EQ(s.D, 2.0);
}

TEST(Sampling, SphereBallRequirement) {
  EXPECT_NO_THROW(require_sphere_ball(catalog::sphere_cap()));
  const Space s = Space::sphere(1.0, 2);
  std::vector<Point> wide;
  for (int i = 0; i < 3; ++i) {
    const double a = 2.0 * M_PI * i / 3.0;
    wide.push_back(Point::vector(SpaceKind::sphere, Eigen::Vector3d(std::cos(a), std::sin(a), 0.0)));
  }
  const DistributionSpec d{s, WeightedSample::uniform(wide), "equator"};
  EXPECT_THROW(require_sphere_ball(d), InvalidInput);
  EXPECT_THROW(require_sphere_ball(catalog::sphere_cap(), 2.0), InvalidInput);

  ExperimentConfig c = concentration(d, 5, 10);
  c.estimator = Estimator::inductive;
  EXPECT_THROW(run_concentration(c), InvalidInput);
}

TEST(Quantile, OrderStatistic) {
  const std::vector<double> v{5, 1, 4, 2, 3};
  EXPECT_EQ(upper_quantile(v, 0.9), 5.0);
  EXPECT_EQ(upper_quantile(v, 0.8), 4.0);
  EXPECT_EQ(upper_quantile(v, 0.2), 1.0);
  EXPECT_EQ(upper_quantile(v, 0.0), 1.0);
  std::vector<double> hundred;
  for (int i = 1; i <= 100; ++i) hundred.push_back(i);
  EXPECT_EQ(upper_quantile(hundred, 0.9), 90.0);
  EXPECT_THROW(upper_quantile({}, 0.5), InvalidInput);
}

TEST(Quantile, CoverageThreshold) {
  EXPECT_NEAR(coverage_threshold(0.1, 1000), 0.9 - 3 * std::sqrt(0.09 / 1000), 1e-15);
  EXPECT_NEAR(coverage_threshold(0.05, 500), 0.95 - 3 * std::sqrt(0.0475 / 500), 1e-15);
}

TEST(Concentration, PointMassIsAlwaysCovered) {
  for (Estimator e : {Estimator::empirical, Estimator::inductive}) {
    ExperimentConfig c = concentration(line({2}), 10, 50);
    c.estimator = e;
    const TrialReport r = run_concentration(c);
    EXPECT_EQ(r.coverage, 1.0);
    EXPECT_TRUE(r.pass);
    for (double x : r.distances) EXPECT_EQ(x, 0.0);
  }
}

TEST(Concentration, RademacherHoeffding) {
  ExperimentConfig c = concentration(catalog::rademacher(), 100, 1000);
  c.delta = 0.1;
  const TrialReport r = run_concentration(c);
  EXPECT_NEAR(r.bound, bounds::hoeffding_radius(1.0, 1.0, 100, 0.1), 1e-15);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.coverage, r.threshold);
  EXPECT_EQ(r.distances.size(), 1000u);
  // The mean of n Rademacher signs has second moment exactly 1/n.
  EXPECT_NEAR(r.mean_sq, 0.01, 5 * std::sqrt(2.0 / 1000) * 0.01);
}

TEST(Concentration, ShrunkBoundFails) {
  ExperimentConfig c = concentration(catalog::rademacher(), 100, 1000);
  c.bound.scale = 0.01;
  const TrialReport r = run_concentration(c);
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.coverage, r.threshold);
}

TEST(Concentration, Deterministic) {
  ExperimentConfig c = concentration(catalog::hoeffding_distribution(SpaceKind::hyperbolic), 20, 40);
  c.threads = 3;
  const TrialReport a = run_concentration(c);
  c.threads = 1;
  const TrialReport b = run_concentration(c);
  EXPECT_EQ(a.distances, b.distances);
  c.seed += 1;
  EXPECT_NE(run_concentration(c).distances, a.distances);
}

TEST(Concentration, IdenticalNonIidMatchesIid) {
  const DistributionSpec d = catalog::hoeffding_distribution(SpaceKind::spd_affine);
  ExperimentConfig iid = concentration(d, 6, 30);
  ExperimentConfig non = iid;
  non.distributions.assign(6, d);
  for (Estimator e : {Estimator::empirical, Estimator::inductive}) {
    iid.estimator = non.estimator = e;
    EXPECT_EQ(run_concentration(iid).distances, run_concentration(non).distances);
  }
}

TEST(Concentration, NonIidWithDifferentBarycentersIsRejected) {
  ExperimentConfig c = concentration(line({0, 1}), 2, 10);
  c.distributions = {line({0, 1}), line({5, 6})};
  EXPECT_THROW(run_concentration(c), InvalidInput);
}

TEST(Concentration, TreeEmpiricalIsFlaggedConjectural) {
  ExperimentConfig c = concentration(catalog::hoeffding_distribution(SpaceKind::metric_tree), 10, 20);
  EXPECT_TRUE(run_concentration(c).conjectural);
  c.estimator = Estimator::inductive;
  EXPECT_FALSE(run_concentration(c).conjectural);
}

TEST(Concentration, ConfigValidation) {
  ExperimentConfig c = concentration(line({0, 1}), 3, 10);
  c.distributions = {line({0, 1}), line({0, 1})};
  EXPECT_THROW(validate(c), InvalidInput);
  c = concentration(line({0, 1}), 3, 0);
  EXPECT_THROW(validate(c), InvalidInput);
  c = concentration(line({0, 1}), 3, 10);
  c.delta = 1.0;
  EXPECT_THROW(validate(c), InvalidInput);
  c = concentration(line({0, 1}), 3, 10);
  c.kind = ExperimentKind::sturm_lln;
  EXPECT_THROW(validate(c), InvalidInput);
}

TEST(Sturm, PointMassHasZeroError) {
  ExperimentConfig c = concentration(line({4}), 7, 30);
  c.kind = ExperimentKind::sturm_lln;
  c.estimator = Estimator::inductive;
  const SturmReport r = verify_sturm_lln(c);
  EXPECT_EQ(r.mean_sq, 0.0);
  EXPECT_EQ(r.bound, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Sturm, NonIidBoundIsAverageVarianceOverN) {
  ExperimentConfig c = concentration(line({0, 1}), 3, 2000);
  c.kind = ExperimentKind::sturm_lln;
  c.estimator = Estimator::inductive;
  c.distributions = {line({-0.5, 0.5}), line({-1, 1}), line({-1.5, 1.5})};
  const SturmReport r = verify_sturm_lln(c);
  EXPECT_NEAR(r.bound, (0.25 + 1 + 2.25) / 9, 1e-15);
  EXPECT_TRUE(r.pass);
}

TEST(Witness, PointMassHasNoTail) {
  const WitnessReport r = verify_subgaussian_witness(line({1}), std::nullopt, 1000, {0.1, 1.0}, 3);
  EXPECT_EQ(r.C, 0.0);
  for (const WitnessRow& row : r.rows) EXPECT_EQ(row.empirical, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Witness, TwoAtomsFromAnAtom) {
  const WitnessReport r = verify_subgaussian_witness(line({0, 2}), real(0), 20000, {0.5, 1.0, 1.5}, 3);
  EXPECT_EQ(r.C, 2.0);
  EXPECT_DOUBLE_EQ(r.mean, 1.0);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].empirical, 1.0);
  EXPECT_EQ(r.rows[2].empirical, 0.0);
  // 2 exp(-t^2/32) exceeds one on this grid, so the reported bound is capped.
  EXPECT_EQ(r.rows[0].bound, 1.0);
  EXPECT_TRUE(r.pass);
}

TEST(Witness, MidpointReferenceHasNoTail) {
  const WitnessReport r = verify_subgaussian_witness(line({0, 2}), real(1), 5000, {}, 3);
  EXPECT_EQ(r.rows.size(), 10u);
  for (const WitnessRow& row : r.rows) EXPECT_EQ(row.empirical, 0.0);
}

TEST(Pac, SampleSizeAndSuccess) {
  const Space e = Space::euclidean(1);
  const PacReport r = run_pac(e, catalog::pac_instance(), 0.5, 0.1, 1000, false, 1.0, 7);
  EXPECT_EQ(r.m, 37u);
  EXPECT_DOUBLE_EQ(r.D, 2.0);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.success_frequency, 0.9);
}

TEST(Pac, IdenticalPointsAlwaysSucceed) {
  const std::vector<Point> same(5, real(3));
  const PacReport r = run_pac(Space::euclidean(1), same, 0.1, 0.2, 100, false, 1.0, 1);
  EXPECT_EQ(r.m, 1u);
  EXPECT_EQ(r.success_frequency, 1.0);
}

TEST(Pac, BernsteinNeedsFewerSamplesForSmallVariance) {
  const Space e = Space::euclidean(1);
  const PacReport h = run_pac(e, catalog::pac_small_variance_instance(), 0.2, 0.1, 200, false, 1.0, 2);
  const PacReport b = run_pac(e, catalog::pac_small_variance_instance(), 0.2, 0.1, 200, true, 1.0, 2);
  EXPECT_LT(b.m, h.m);
  EXPECT_TRUE(b.pass);
}

TEST(Suite, EuclideanPassesEverything) {
  const SuiteReport r = npc_property_suite(Space::euclidean(3), 1, SuiteSizes{500, 500, 50, 20});
  EXPECT_TRUE(r.pass());
  std::set<std::string> names;
  for (const CheckResult& c : r.checks) names.insert(c.name);
  EXPECT_EQ(names, (std::set<std::string>{"midpoint_inequality", "constant_speed", "lipschitz_inductive",
                                          "lipschitz_empirical", "variance_sandwich"}));
}

TEST(Suite, OnlySelectsChecks) {
  const SuiteReport r = npc_property_suite(Space::spd_affine(2), 1, SuiteSizes{300, 300, 10, 10}, {"constant_speed"});
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].name, "constant_speed");
  EXPECT_EQ(r.checks[0].violations, 0u);
}

TEST(Suite, SphereSkipsNonPositiveCurvatureChecks) {
  const SuiteReport r = npc_property_suite(catalog::standard_space(SpaceKind::sphere), 1, SuiteSizes{100, 100, 10, 10});
  for (const CheckResult& c : r.checks) {
    EXPECT_NE(c.name, "midpoint_inequality");
    EXPECT_EQ(c.name.rfind("lipschitz", 0), std::string::npos);
  }
}
