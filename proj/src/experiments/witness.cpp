#include <cmath>

#include "frechet/concentration_bounds.hpp"
#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"

namespace frechet::experiments {

WitnessReport verify_subgaussian_witness(const DistributionSpec& d, const std::optional<Point>& x0,
                                         std::size_t draws, std::vector<double> t_grid, std::uint64_t seed) {
  if (draws == 0) throw InvalidInput("draws must be at least 1");
  const Point center = x0 ? *x0 : population_barycenter(d).point;
  require_valid(d.space, center);

  const std::vector<double> w = d.sample.weights_as_double();
  std::vector<double> f(d.sample.size());
  WitnessReport r;
  r.label = d.label;
  r.draws = draws;
  r.seed = seed;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = dist(d.space, center, d.sample.points()[i]);
    r.mean += w[i] * f[i];
    if (d.sample.weights()[i].num() > 0) r.C = std::max(r.C, f[i]);
  }
  if (t_grid.empty()) {
    const double unit = r.C > 0.0 ? r.C : 1.0;
    for (int k = 1; k <= 10; ++k) t_grid.push_back(0.2 * k * unit);
  }

  // Tally draws by atom, then evaluate every t from the counts.
  const AtomSampler sampler(d.sample);
  RandomStream rng = RandomStream::derive(seed, 0);
  std::vector<std::size_t> hits(f.size(), 0);
  for (std::size_t k = 0; k < draws; ++k) ++hits[sampler.draw(rng)];

  r.pass = true;
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw InvalidInput("tail thresholds must be non-negative");
    std::size_t exceed = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (std::abs(f[i] - r.mean) >= t) exceed += hits[i];
    WitnessRow row;
    row.t = t;
    row.empirical = static_cast<double>(exceed) / static_cast<double>(draws);
    row.bound = r.C > 0.0 ? bounds::subgaussian_tail(2.0 * r.C, t) : (t > 0.0 ? 0.0 : 1.0);
    row.standard_error = std::sqrt(row.bound * (1.0 - row.bound) / static_cast<double>(draws));
    row.pass = row.empirical <= row.bound + 3.0 * row.standard_error;
    r.pass = r.pass && row.pass;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace frechet::experiments
