#include <cmath>

#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"
#include "parallel.hpp"

namespace frechet::experiments {

PacReport run_pac(const Space& space, const std::vector<Point>& points, double eps_target, double delta,
                  std::size_t trials, bool use_bernstein, double c_pac, std::uint64_t seed,
                  const SolverOptions& options, std::size_t threads) {
  if (points.empty()) throw InvalidInput("PAC run needs a non-empty point set");
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  for (const Point& p : points) require_valid(space, p);

  PacReport r;
  r.reference = empirical_barycenter(space, points, options).point;
  r.bernstein = use_bernstein;
  r.eps_target = eps_target;
  r.delta = delta;
  r.c_pac = c_pac;
  r.trials = trials;
  r.seed = seed;
  r.D = diameter(space, points);
  r.sigma2 = frechet_variance(space, WeightedSample::uniform(points), r.reference);
  r.m = use_bernstein ? bounds::pac_sample_size_bernstein(r.sigma2, r.D, eps_target, delta, c_pac)
                      : bounds::pac_sample_size(r.D, eps_target, delta, c_pac);

  r.distances.assign(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t i) {
    RandomStream rng = RandomStream::derive(seed, i);
    std::vector<Point> sub;
    sub.reserve(r.m);
    for (std::size_t k = 0; k < r.m; ++k) sub.push_back(points[rng.uniform_int(points.size())]);
    r.distances[i] = dist(space, inductive_barycenter(space, sub), r.reference);
  });
  for (double d : r.distances)
    if (d <= eps_target) ++r.successes;
  r.success_frequency = static_cast<double>(r.successes) / static_cast<double>(trials);
  r.threshold = coverage_threshold(delta, trials);
  r.pass = r.success_frequency >= r.threshold;
  return r;
}

}  // namespace frechet::experiments
