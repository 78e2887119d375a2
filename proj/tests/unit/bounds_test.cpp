#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "frechet/concentration_bounds.hpp"
#include "frechet/errors.hpp"

using namespace frechet;
using namespace frechet::bounds;

// Reference values below were evaluated independently at 30 significant digits.

TEST(SubGaussian, Examples) {
  EXPECT_NEAR(subgaussian_radius(2.0, 1.0, 100, 0.05), 0.446163676520457, 1e-14);
  EXPECT_DOUBLE_EQ(subgaussian_radius(0.0, 3.0, 25, 0.3), 3.0 / 5.0);
  EXPECT_NEAR(subgaussian_radius(1.0, 0.5, 16, 1.0 - 1e-15), 0.125, 1e-7);
}

TEST(Hoeffding, Examples) {
  EXPECT_NEAR(hoeffding_radius(1.0, 1.0, 100, 0.05), 0.446163676520457, 1e-14);
  EXPECT_DOUBLE_EQ(hoeffding_radius(2.0, 0.0, 16, 0.2), 0.5);
}

TEST(Hoeffding, EqualsSubGaussianWithTwiceC) {
  for (double c : {0.0, 0.3, 1.0, 7.5})
    for (std::size_t n : {1u, 10u, 1000u})
      EXPECT_EQ(hoeffding_radius(0.4, c, n, 0.07), subgaussian_radius(2 * c, 0.4, n, 0.07));
}

TEST(Bernstein, Examples) {
  EXPECT_NEAR(bernstein_radius(0.1, 1.0, 1000, 0.01, Combine::max), 0.0167345585089986, 1e-15);
  EXPECT_NEAR(bernstein_radius(0.1, 1.0, 1000, 0.01, Combine::min), 0.0154427314894700, 1e-15);
  EXPECT_NEAR(bernstein_radius(0.1, 1.0, 1000, 0.01, Combine::sum), 0.0290150123383002, 1e-15);
  EXPECT_NEAR(bernstein_radius(0.0, 1.5, 40, 0.1), 8 * 1.5 * std::log(10.0) / 120.0, 1e-15);
  EXPECT_NEAR(bernstein_radius(0.3, 1.0, 9, 1.0 - 1e-15), 0.1, 1e-7);
}

TEST(Bernstein, MinNeverExceedsMax) {
  for (double s : {0.0, 0.01, 0.1, 1.0})
    for (double c : {0.0, 0.5, 2.0})
      for (double d : {0.001, 0.1, 0.9})
        for (std::size_t n : {1u, 50u, 5000u})
          EXPECT_LE(bernstein_radius(s, c, n, d, Combine::min), bernstein_radius(s, c, n, d, Combine::max));
}

TEST(NonIid, Examples) {
  const std::vector<double> zero{0.0, 0.0}, one{1.0, 1.0};
  EXPECT_NEAR(noniid_hoeffding_radius(zero, one, 2, std::exp(-2.0)), 1.0, 1e-15);
  const std::vector<double> s1{0.4}, c1{2.0};
  EXPECT_NEAR(noniid_hoeffding_radius(s1, c1, 1, 0.2), 0.4 + 2.0 * std::sqrt(std::log(5.0)), 1e-15);
  const std::vector<double> tenth{0.1, 0.1};
  EXPECT_NEAR(noniid_bernstein_radius(tenth, 1.0, 2, 0.5), 0.994906918865248, 1e-14);
}

TEST(NonIid, ConstantListsCollapse) {
  for (std::size_t n : {1u, 3u, 40u}) {
    const std::vector<double> s(n, 0.7), c(n, 1.3);
    EXPECT_NEAR(noniid_hoeffding_radius(s, c, n, 0.1), subgaussian_radius(1.3, 0.7, n, 0.1), 1e-15);
    EXPECT_NEAR(noniid_bernstein_radius(s, 1.3, n, 0.1), bernstein_radius(0.7, 1.3, n, 0.1), 1e-15);
  }
}

TEST(NonIid, LengthMismatchIsRejected) {
  const std::vector<double> two{1.0, 1.0}, three{1.0, 1.0, 1.0};
  EXPECT_THROW(noniid_hoeffding_radius(two, three, 2, 0.1), InvalidInput);
  EXPECT_THROW(noniid_bernstein_radius(two, 1.0, 3, 0.1), InvalidInput);
  EXPECT_THROW(sturm_lln_bound(two, 3), InvalidInput);
}

TEST(SturmLln, Examples) {
  const std::vector<double> s{1.0, 2.0, 2.0};
  EXPECT_DOUBLE_EQ(sturm_lln_bound(s, 3), 1.0);
  EXPECT_DOUBLE_EQ(sturm_lln_bound(std::vector<double>(4, 0.5), 4), 0.25 / 4);
  EXPECT_DOUBLE_EQ(sturm_lln_bound(std::vector<double>(5, 0.0), 5), 0.0);
}

TEST(Pac, Examples) {
  EXPECT_EQ(pac_sample_size(2.0, 0.5, 0.1), 37u);
  EXPECT_EQ(pac_sample_size(1.0, 0.1, std::exp(-1.0)), 100u);
  EXPECT_EQ(pac_sample_size(1.0, 0.1, 0.5), 100u);
  EXPECT_EQ(pac_sample_size(0.5, 0.5, 0.01, 2.0), static_cast<std::size_t>(std::ceil(2 * std::log(100.0))));
  EXPECT_EQ(pac_sample_size(0.0, 0.5, 0.1), 1u);
}

TEST(Pac, BernsteinExamples) {
  EXPECT_EQ(pac_sample_size_bernstein(0.0, 1.0, 0.1, 0.05), static_cast<std::size_t>(std::ceil(10 * std::log(20.0))));
  EXPECT_EQ(pac_sample_size_bernstein(0.01, 1.0, 0.1, 0.05), 30u);  // 10 log 20 = 29.957...
  EXPECT_EQ(pac_sample_size_bernstein(4.0, 2.0, 2.0, 0.5), 1u);
  EXPECT_EQ(pac_sample_size_bernstein(0.02, 2.0, 0.5, 0.1), 10u);
}

TEST(Pac, InvalidInputs) {
  EXPECT_THROW(pac_sample_size(1.0, 0.0, 0.1), InvalidInput);
  EXPECT_THROW(pac_sample_size(1.0, 0.1, 1.0), InvalidInput);
  EXPECT_THROW(pac_sample_size_bernstein(-1.0, 1.0, 0.1, 0.1), InvalidInput);
}

TEST(KEpsilon, Examples) {
  EXPECT_NEAR(k_epsilon(1.0, std::numbers::pi / 4), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(k_epsilon(4.0, std::numbers::pi / 8), std::numbers::pi / 2, 1e-15);
  EXPECT_LT(k_epsilon(1.0, 1e-9), 1e-8);
  EXPECT_THROW(k_epsilon(1.0, std::numbers::pi / 2), InvalidInput);
  EXPECT_THROW(k_epsilon(1.0, 2.0), InvalidInput);
  EXPECT_THROW(k_epsilon(-1.0, 0.1), InvalidInput);
}

TEST(KEpsilon, StaysInOpenInterval) {
  for (double kappa : {0.01, 0.5, 1.0, 3.0, 100.0}) {
    const double limit = std::numbers::pi / (2 * std::sqrt(kappa));
    for (int i = 1; i < 1000; ++i) {
      const double k = k_epsilon(kappa, limit * i / 1000.0);
      EXPECT_GT(k, 0.0);
      EXPECT_LT(k, 2.0);
    }
  }
}

TEST(CatKappa, Examples) {
  const double q = std::numbers::pi / 4;
  EXPECT_NEAR(cat_kappa_radius(1, 2, 1, q, 10000, 0.1), 4.49673081069173, 1e-12);
  EXPECT_NEAR(cat_kappa_radius(2, 2, 1, q, 10000, 0.1), 6.18379575105721, 1e-12);
  EXPECT_NEAR(cat_kappa_radius(1.5, 3, 2, 0.3, 500, 0.05), 45.3580994197638, 1e-10);
  EXPECT_NEAR(cat_kappa_radius(1, 2, 1, q, 20000, 0.1), cat_kappa_radius(1, 2, 1, q, 10000, 0.1) / std::sqrt(2.0), 1e-14);
}

TEST(CatKappa, BothAssembliesAgree) {
  for (double kappa : {0.3, 1.0, 2.0, 9.0})
    for (double frac : {0.05, 0.3, 0.5, 0.9}) {
      const double eps = frac * std::numbers::pi / (2 * std::sqrt(kappa));
      const double a = cat_kappa_radius(1.7, 2.5, kappa, eps, 321, 0.03);
      const double b = cat_kappa_radius_from_constants(1.7, 2.5, kappa, eps, 321, 0.03);
      EXPECT_NEAR(a / b, 1.0, 1e-12) << kappa << " " << eps;
    }
}

TEST(Tail, Examples) {
  EXPECT_DOUBLE_EQ(subgaussian_tail(1.0, 0.0), 1.0);
  EXPECT_NEAR(subgaussian_tail(1.3, 1.3 * std::sqrt(2 * std::log(2.0))), 1.0, 1e-15);
  EXPECT_LT(subgaussian_tail(1.0, 40.0), 1e-300);
  EXPECT_NEAR(subgaussian_tail(2.0, 1.0), std::min(1.0, 1.76499380516919), 1e-15);
  EXPECT_NEAR(subgaussian_tail(2.0, 4.0), 2 * std::exp(-2.0), 1e-15);
}

TEST(Radii, MonotoneInSampleSizeAndConfidence) {
  const std::vector<double> deltas{0.01, 0.05, 0.2, 0.6, 0.95};
  for (std::size_t n = 1; n < 200; n += 7) {
    EXPECT_GT(hoeffding_radius(0.4, 1.0, n, 0.1), hoeffding_radius(0.4, 1.0, n + 1, 0.1));
    EXPECT_GT(bernstein_radius(0.4, 1.0, n, 0.1), bernstein_radius(0.4, 1.0, n + 1, 0.1));
    EXPECT_GT(subgaussian_radius(1.0, 0.4, n, 0.1), subgaussian_radius(1.0, 0.4, n + 1, 0.1));
    EXPECT_GT(cat_kappa_radius(1, 2, 1, 0.5, n, 0.1), cat_kappa_radius(1, 2, 1, 0.5, n + 1, 0.1));
    for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
      EXPECT_GE(hoeffding_radius(0.4, 1.0, n, deltas[i]), hoeffding_radius(0.4, 1.0, n, deltas[i + 1]));
      EXPECT_GE(bernstein_radius(0.4, 1.0, n, deltas[i]), bernstein_radius(0.4, 1.0, n, deltas[i + 1]));
      EXPECT_GE(cat_kappa_radius(1, 2, 1, 0.5, n, deltas[i]), cat_kappa_radius(1, 2, 1, 0.5, n, deltas[i + 1]));
    }
  }
}

TEST(Radii, DeltaOutsideOpenIntervalIsRejected) {
  for (double d : {0.0, 1.0, -0.5, 2.0, std::nan("")}) {
    EXPECT_THROW(subgaussian_radius(1, 1, 10, d), InvalidInput);
    EXPECT_THROW(hoeffding_radius(1, 1, 10, d), InvalidInput);
    EXPECT_THROW(bernstein_radius(1, 1, 10, d), InvalidInput);
    EXPECT_THROW(cat_kappa_radius(1, 1, 1, 0.5, 10, d), InvalidInput);
  }
  EXPECT_THROW(hoeffding_radius(1, 1, 0, 0.1), InvalidInput);
}

TEST(Evaluate, DispatchAndMissingFields) {
  BoundQuery q;
  q.sigma = 1.0;
  q.C = 1.0;
  q.n = 100;
  q.delta = 0.05;
  EXPECT_NEAR(evaluate("hoeffding_radius", q).value, 0.446163676520457, 1e-14);
  EXPECT_THROW(evaluate("bernstein", q), InvalidInput);
  EXPECT_THROW(evaluate("pac_sample_size", q), InvalidInput);
  q.D = 2.0;
  q.eps_target = 0.5;
  q.delta = 0.1;
  const BoundValue v = evaluate("pac_sample_size", q);
  ASSERT_TRUE(v.sample_size.has_value());
  EXPECT_EQ(*v.sample_size, 37u);
  for (const std::string& name : bound_names()) EXPECT_NO_THROW({
      try {
        evaluate(name, BoundQuery{});
      } catch (const InvalidInput&) {
      }
    });
}
