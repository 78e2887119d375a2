#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"

namespace frechet::experiments {
namespace {

std::vector<Point> charged_atoms(const WeightedSample& s) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.weights()[i].num() > 0) out.push_back(s.points()[i]);
  return out;
}

}  // namespace

AtomSampler::AtomSampler(const WeightedSample& sample) {
  std::int64_t q = 1;
  for (const Rational& w : sample.weights()) q = checked_lcm(q, w.den());
  std::uint64_t acc = 0;
  for (const Rational& w : sample.weights()) {
    acc += static_cast<std::uint64_t>(w.num()) * static_cast<std::uint64_t>(q / w.den());
    cumulative_.push_back(acc);
  }
  total_ = static_cast<std::uint64_t>(q);
}

std::size_t AtomSampler::draw(RandomStream& rng) const {
  const std::uint64_t u = rng.uniform_int(total_);
  std::size_t lo = 0, hi = cumulative_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (u < cumulative_[mid]) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

const Point& sample(const DistributionSpec& dist, RandomStream& rng) {
  return dist.sample.points()[AtomSampler(dist.sample).draw(rng)];
}

void require_sphere_ball(const DistributionSpec& dist, std::optional<double> epsilon) {
  const Space& space = dist.space;
  if (space.kind() != SpaceKind::sphere) return;
  const double half = std::numbers::pi / (2.0 * std::sqrt(space.curvature()));
  if (epsilon && !(*epsilon > 0.0 && *epsilon < half))
    throw InvalidInput("epsilon must lie in (0, pi/(2 sqrt(kappa)))");
  const std::vector<Point> atoms = charged_atoms(dist.sample);

  std::vector<Point> centers = atoms;
  Eigen::VectorXd chord = Eigen::VectorXd::Zero(space.ambient_size());
  const std::vector<double> w = dist.sample.weights_as_double();
  for (std::size_t i = 0; i < dist.sample.size(); ++i) chord += w[i] * dist.sample.points()[i].coords();
  if (chord.norm() > 0.0) centers.push_back(Point::vector(SpaceKind::sphere, chord * (space.radius() / chord.norm())));

  double best = std::numeric_limits<double>::infinity();
  for (const Point& c : centers) {
    double r = 0.0;
    for (const Point& a : atoms) r = std::max(r, frechet::dist(space, c, a));
    best = std::min(best, r);
  }
  const bool ok = epsilon ? best <= half - *epsilon : best < half;
  if (!ok) {
    std::ostringstream msg;
    msg << "sphere support of '" << dist.label << "' does not fit in a ball of radius "
        << (epsilon ? "pi/(2 sqrt(kappa)) - epsilon = " : "below pi/(2 sqrt(kappa)) = ")
        << (epsilon ? half - *epsilon : half) << " (smallest radius found: " << best << ")";
    throw InvalidInput(msg.str());
  }
}

BarycenterResult population_barycenter(const DistributionSpec& dist, const SolverOptions& options,
                                       std::optional<double> epsilon) {
  require_sphere_ball(dist, epsilon);
  return weighted_barycenter(dist.space, dist.sample, options);
}

DistributionStats distribution_stats(const DistributionSpec& dist, const Point& barycenter) {
  const std::vector<Point> atoms = charged_atoms(dist.sample);
  double c = 0.0;
  for (const Point& a : atoms) c = std::max(c, frechet::dist(dist.space, barycenter, a));
  return DistributionStats{barycenter, std::sqrt(frechet_variance(dist.space, dist.sample, barycenter)), c,
                           diameter(dist.space, atoms)};
}

}  // namespace frechet::experiments
