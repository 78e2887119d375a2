#include "frechet/concentration_bounds.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "frechet/errors.hpp"

namespace frechet::bounds {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0, 1), got " + std::to_string(delta));
}

void check_n(std::size_t n) {
  if (n == 0) throw InvalidInput("sample size n must be positive");
}

void check_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(name) + " must be a finite non-negative number");
}

void check_pos(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(name) + " must be a finite positive number");
}

void check_ball(double kappa, double epsilon) {
  check_pos(kappa, "kappa");
  const double limit = std::numbers::pi / (2.0 * std::sqrt(kappa));
  if (!(epsilon > 0.0 && epsilon < limit))
    throw InvalidInput("epsilon must lie in (0, pi/(2 sqrt(kappa))) = (0, " + std::to_string(limit) + "), got " +
                       std::to_string(epsilon));
}

double quadratic_mean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

void check_list(std::span<const double> v, std::size_t n, const char* name) {
  if (v.size() != n)
    throw InvalidInput(std::string(name) + " has " + std::to_string(v.size()) + " entries, expected n = " +
                       std::to_string(n));
  for (double x : v) check_nonneg(x, name);
}

double combine_terms(double a, double b, Combine c) {
  switch (c) {
    case Combine::max: return std::max(a, b);
    case Combine::min: return std::min(a, b);
    case Combine::sum: return a + b;
  }
  return std::max(a, b);
}

// ceil that ignores round-off of a few ulps above an integer.
std::size_t ceil_count(double x) {
  if (!std::isfinite(x)) throw InvalidInput("sample size is not finite");
  const double c = std::ceil(x * (1.0 - 4.0 * DBL_EPSILON));
  return c < 1.0 ? 1 : static_cast<std::size_t>(c);
}

}  // namespace

Combine parse_combine(std::string_view s) {
  if (s == "max") return Combine::max;
  if (s == "min") return Combine::min;
  if (s == "sum") return Combine::sum;
  throw InvalidInput("combine must be one of max, min, sum; got '" + std::string(s) + "'");
}

std::string_view to_string(Combine c) {
  switch (c) {
    case Combine::max: return "max";
    case Combine::min: return "min";
    case Combine::sum: return "sum";
  }
  return "max";
}

double subgaussian_radius(double K, double sigma, std::size_t n, double delta) {
  check_nonneg(K, "K");
  check_nonneg(sigma, "sigma");
  check_n(n);
  check_delta(delta);
  const double nn = static_cast<double>(n);
  return sigma / std::sqrt(nn) + K * std::sqrt(std::log(1.0 / delta) / nn);
}

double hoeffding_radius(double sigma, double C, std::size_t n, double delta) {
  check_nonneg(C, "C");
  return subgaussian_radius(2.0 * C, sigma, n, delta);
}

double bernstein_radius(double sigma, double C, std::size_t n, double delta, Combine combine) {
  check_nonneg(sigma, "sigma");
  check_nonneg(C, "C");
  check_n(n);
  check_delta(delta);
  const double nn = static_cast<double>(n);
  const double l = std::log(1.0 / delta);
  return sigma / std::sqrt(nn) + combine_terms(2.0 * sigma * std::sqrt(l / nn), 8.0 * C * l / (3.0 * nn), combine);
}

double noniid_hoeffding_radius(std::span<const double> sigmas, std::span<const double> Cs, std::size_t n,
                               double delta) {
  check_n(n);
  check_delta(delta);
  check_list(sigmas, n, "sigmas");
  check_list(Cs, n, "Cs");
  const double nn = static_cast<double>(n);
  return quadratic_mean(sigmas) / std::sqrt(nn) + quadratic_mean(Cs) * std::sqrt(std::log(1.0 / delta) / nn);
}

double noniid_bernstein_radius(std::span<const double> sigmas, double C, std::size_t n, double delta,
                               Combine combine) {
  check_n(n);
  check_list(sigmas, n, "sigmas");
  return bernstein_radius(quadratic_mean(sigmas), C, n, delta, combine);
}

double sturm_lln_bound(std::span<const double> sigmas, std::size_t n) {
  check_n(n);
  check_list(sigmas, n, "sigmas");
  double acc = 0.0;
  for (double s : sigmas) acc += s * s;
  const double nn = static_cast<double>(n);
  return acc / (nn * nn);
}

std::size_t pac_sample_size(double D, double eps_target, double delta, double c_pac) {
  check_nonneg(D, "D");
  check_pos(eps_target, "eps_target");
  check_pos(c_pac, "c_pac");
  check_delta(delta);
  const double ratio = D / eps_target;
  return ceil_count(c_pac * ratio * ratio * std::max(1.0, std::log(1.0 / delta)));
}

std::size_t pac_sample_size_bernstein(double sigma2, double D, double eps_target, double delta, double c_pac) {
  check_nonneg(sigma2, "sigma2");
  check_nonneg(D, "D");
  check_pos(eps_target, "eps_target");
  check_pos(c_pac, "c_pac");
  check_delta(delta);
  const double lead = std::max(sigma2 / (eps_target * eps_target), D / eps_target);
  return ceil_count(c_pac * lead * std::max(1.0, std::log(1.0 / delta)));
}

double k_epsilon(double kappa, double epsilon) {
  check_ball(kappa, epsilon);
  const double rk = std::sqrt(kappa);
  return (std::numbers::pi - 2.0 * rk * epsilon) * std::tan(epsilon * rk);
}

double cat_kappa_radius(double A, double p, double kappa, double epsilon, std::size_t n, double delta) {
  check_pos(A, "A");
  check_pos(p, "p");
  check_ball(kappa, epsilon);
  check_n(n);
  check_delta(delta);
  const double nn = static_cast<double>(n);
  const double tn = std::tan(epsilon * std::sqrt(kappa));
  const double first = 288.0 * std::sqrt(A) / (std::sqrt(kappa) * tn) * std::sqrt(p / nn);
  const double second = (6.0 * std::numbers::sqrt2 / std::sqrt(tn) + 16.0) / std::sqrt(kappa * tn) *
                        std::sqrt(std::log(2.0 / delta) / nn);
  return first + second;
}

double cat_kappa_radius_from_constants(double A, double p, double kappa, double epsilon, std::size_t n,
                                       double delta) {
  check_pos(A, "A");
  check_pos(p, "p");
  check_n(n);
  check_delta(delta);
  const double ke = k_epsilon(kappa, epsilon);
  const double rk = std::sqrt(kappa);
  const double ball = std::numbers::pi / (2.0 * rk) - epsilon;
  const double tn = std::tan(epsilon * rk);
  const double c1 = 96.0 * std::sqrt(2.0 * A) * ball / std::sqrt(ke);
  const double c2 = std::sqrt((std::numbers::pi - 2.0 * epsilon * rk) / kappa) *
                    (2.0 / std::sqrt(tn) + 16.0 / (3.0 * std::numbers::sqrt2));
  const double nn = static_cast<double>(n);
  return (3.0 * c1 * std::sqrt(p / nn) + 3.0 * c2 * std::sqrt(std::log(2.0 / delta) / nn)) / std::sqrt(ke / 2.0);
}

double subgaussian_tail(double K, double t) {
  check_pos(K, "K");
  check_nonneg(t, "t");
  return std::min(1.0, 2.0 * std::exp(-t * t / (2.0 * K * K)));
}

std::vector<std::string> bound_names() {
  return {"subgaussian_radius", "hoeffding_radius",  "bernstein_radius",          "noniid_hoeffding_radius",
          "noniid_bernstein_radius", "sturm_lln_bound", "pac_sample_size", "pac_sample_size_bernstein",
          "k_epsilon",          "cat_kappa_radius",  "subgaussian_tail"};
}

namespace {

template <class T>
T need(const std::optional<T>& v, const char* field, std::string_view bound) {
  if (!v) throw InvalidInput(std::string(bound) + " requires field '" + field + "'");
  return *v;
}

}  // namespace

BoundValue evaluate(std::string_view name, const BoundQuery& q) {
  BoundValue out{std::string(name), 0.0, std::nullopt};
  if (name == "subgaussian_radius") {
    out.value = subgaussian_radius(need(q.K, "K", name), need(q.sigma, "sigma", name), need(q.n, "n", name),
                                   need(q.delta, "delta", name));
  } else if (name == "hoeffding_radius") {
    out.value = hoeffding_radius(need(q.sigma, "sigma", name), need(q.C, "C", name), need(q.n, "n", name),
                                 need(q.delta, "delta", name));
  } else if (name == "bernstein_radius") {
    out.value = bernstein_radius(need(q.sigma, "sigma", name), need(q.C, "C", name), need(q.n, "n", name),
                                 need(q.delta, "delta", name), q.combine);
  } else if (name == "noniid_hoeffding_radius") {
    out.value = noniid_hoeffding_radius(q.sigmas, q.Cs, need(q.n, "n", name), need(q.delta, "delta", name));
  } else if (name == "noniid_bernstein_radius") {
    out.value = noniid_bernstein_radius(q.sigmas, need(q.C, "C", name), need(q.n, "n", name),
                                        need(q.delta, "delta", name), q.combine);
  } else if (name == "sturm_lln_bound") {
    out.value = sturm_lln_bound(q.sigmas, need(q.n, "n", name));
  } else if (name == "pac_sample_size") {
    out.sample_size = pac_sample_size(need(q.D, "D", name), need(q.eps_target, "eps_target", name),
                                      need(q.delta, "delta", name), q.c_pac);
    out.value = static_cast<double>(*out.sample_size);
  } else if (name == "pac_sample_size_bernstein") {
    out.sample_size = pac_sample_size_bernstein(need(q.sigma2, "sigma2", name), need(q.D, "D", name),
                                                need(q.eps_target, "eps_target", name), need(q.delta, "delta", name),
                                                q.c_pac);
    out.value = static_cast<double>(*out.sample_size);
  } else if (name == "k_epsilon") {
    out.value = k_epsilon(need(q.kappa, "kappa", name), need(q.epsilon, "epsilon", name));
  } else if (name == "cat_kappa_radius") {
    out.value = cat_kappa_radius(need(q.A, "A", name), need(q.p, "p", name), need(q.kappa, "kappa", name),
                                 need(q.epsilon, "epsilon", name), need(q.n, "n", name), need(q.delta, "delta", name));
  } else if (name == "subgaussian_tail") {
    out.value = subgaussian_tail(need(q.K, "K", name), need(q.t, "t", name));
  } else {
    throw InvalidInput("unknown bound '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace frechet::bounds
