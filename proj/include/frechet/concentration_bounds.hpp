#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frechet::bounds {

/// How the two Bernstein deviation terms are combined. `max` is always a
/// valid upper bound and is the default; `min` and `sum` are exposed for study.
enum class Combine { max, min, sum };

Combine parse_combine(std::string_view s);
std::string_view to_string(Combine c);

/// sigma/sqrt(n) + K sqrt(log(1/delta)/n).
double subgaussian_radius(double K, double sigma, std::size_t n, double delta);

/// subgaussian_radius with K = 2C (bounded variables are 4C^2-sub-Gaussian).
double hoeffding_radius(double sigma, double C, std::size_t n, double delta);

/// sigma/sqrt(n) + combine(2 sigma sqrt(log(1/delta)/n), 8 C log(1/delta) / (3n)).
double bernstein_radius(double sigma, double C, std::size_t n, double delta, Combine combine = Combine::max);

/// Independent, non-identically distributed variables sharing a barycenter:
/// sigma_bar/sqrt(n) + C_bar sqrt(log(1/delta)/n), with quadratic means
/// sigma_bar = sqrt(sum sigma_i^2 / n), C_bar = sqrt(sum C_i^2 / n).
double noniid_hoeffding_radius(std::span<const double> sigmas, std::span<const double> Cs, std::size_t n,
                               double delta);

double noniid_bernstein_radius(std::span<const double> sigmas, double C, std::size_t n, double delta,
                               Combine combine = Combine::max);

/// sum sigma_i^2 / n^2, the bound on E[d(S_n, b*)^2] for the inductive mean.
double sturm_lln_bound(std::span<const double> sigmas, std::size_t n);

/// ceil(c (D/eps)^2 max(1, log(1/delta))), at least 1.
std::size_t pac_sample_size(double D, double eps_target, double delta, double c_pac = 1.0);

/// ceil(c max(sigma^2/eps^2, D/eps) max(1, log(1/delta))), at least 1.
std::size_t pac_sample_size_bernstein(double sigma2, double D, double eps_target, double delta, double c_pac = 1.0);

/// Strong-convexity modulus (pi - 2 sqrt(kappa) eps) tan(eps sqrt(kappa)) of
/// half the squared distance on a ball of radius pi/(2 sqrt(kappa)) - eps.
double k_epsilon(double kappa, double epsilon);

/// Explicit high-probability radius for the empirical barycenter in a
/// CAT(kappa) space, kappa > 0, with covering constants (A, p):
///   288 sqrt(A) / (sqrt(kappa) tan(eps sqrt(kappa))) sqrt(p/n)
///   + (6 sqrt(2) / sqrt(tan(eps sqrt(kappa))) + 16) / sqrt(kappa tan(eps sqrt(kappa))) sqrt(log(2/delta)/n).
double cat_kappa_radius(double A, double p, double kappa, double epsilon, std::size_t n, double delta);

/// Same radius assembled from the intermediate constants c1, c2 and k_eps:
/// (3 c1 sqrt(p/n) + 3 c2 sqrt(log(2/delta)/n)) / sqrt(k_eps / 2).
double cat_kappa_radius_from_constants(double A, double p, double kappa, double epsilon, std::size_t n,
                                       double delta);

/// min(1, 2 exp(-t^2 / (2 K^2))).
double subgaussian_tail(double K, double t);

/// Inputs for the named evaluators; fields not needed by a bound are ignored.
struct BoundQuery {
  std::optional<double> sigma;
  std::optional<double> sigma2;
  std::optional<double> C;
  std::optional<double> K;
  std::optional<std::size_t> n;
  std::optional<double> delta;
  std::vector<double> sigmas;
  std::vector<double> Cs;
  std::optional<double> kappa;
  std::optional<double> epsilon;
  std::optional<double> A;
  std::optional<double> p;
  std::optional<double> D;
  std::optional<double> eps_target;
  std::optional<double> t;
  double c_pac = 1.0;
  Combine combine = Combine::max;
};

struct BoundValue {
  std::string bound;
  double value = 0.0;
  /// Set for the sample-size formulas.
  std::optional<std::size_t> sample_size;
};

/// Names accepted by evaluate().
std::vector<std::string> bound_names();

/// Dispatches on `name` (e.g. "hoeffding_radius"); throws InvalidInput for an
/// unknown name or a missing field.
BoundValue evaluate(std::string_view name, const BoundQuery& query);

}  // namespace frechet::bounds
