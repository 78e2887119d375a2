#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"
#include "parallel.hpp"

namespace frechet::experiments {

std::string_view to_string(Estimator e) { return e == Estimator::empirical ? "empirical" : "inductive"; }

Estimator parse_estimator(std::string_view s) {
  if (s == "empirical") return Estimator::empirical;
  if (s == "inductive") return Estimator::inductive;
  throw InvalidInput("estimator must be 'empirical' or 'inductive', got '" + std::string(s) + "'");
}

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::concentration: return "concentration";
    case ExperimentKind::sturm_lln: return "sturm_lln";
    case ExperimentKind::subgaussian_witness: return "subgaussian_witness";
    case ExperimentKind::pac: return "pac";
  }
  return "concentration";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  if (s == "concentration") return ExperimentKind::concentration;
  if (s == "sturm_lln") return ExperimentKind::sturm_lln;
  if (s == "subgaussian_witness") return ExperimentKind::subgaussian_witness;
  if (s == "pac") return ExperimentKind::pac;
  throw InvalidInput("unknown experiment kind '" + std::string(s) + "'");
}

void validate(const ExperimentConfig& c) {
  if (c.distributions.empty()) throw InvalidInput("experiment needs at least one distribution");
  for (const auto& d : c.distributions)
    if (!(d.space == c.distributions.front().space)) throw InvalidInput("all distributions must share one space");
  if (c.trials == 0) throw InvalidInput("trials must be at least 1");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  if (c.tol && !(*c.tol > 0.0)) throw InvalidInput("tol must be positive");
  switch (c.kind) {
    case ExperimentKind::concentration:
    case ExperimentKind::sturm_lln:
      if (c.n == 0) throw InvalidInput("n must be at least 1");
      if (c.distributions.size() != 1 && c.distributions.size() != c.n)
        throw InvalidInput("give one distribution (i.i.d.) or exactly n = " + std::to_string(c.n) +
                           " distributions (independent, non-identical)");
      if (!(c.bound.scale > 0.0) || !std::isfinite(c.bound.scale)) throw InvalidInput("bound scale must be positive");
      if (c.kind == ExperimentKind::sturm_lln && c.estimator != Estimator::inductive)
        throw InvalidInput("the Sturm law of large numbers check uses the inductive estimator");
      break;
    case ExperimentKind::subgaussian_witness:
      if (c.distributions.size() != 1) throw InvalidInput("witness check takes exactly one distribution");
      if (c.draws == 0) throw InvalidInput("draws must be at least 1");
      break;
    case ExperimentKind::pac:
      if (c.distributions.size() != 1) throw InvalidInput("PAC run takes exactly one point set");
      if (!(c.eps_target > 0.0)) throw InvalidInput("eps_target must be positive");
      if (!(c.c_pac > 0.0)) throw InvalidInput("c_pac must be positive");
      break;
  }
}

double coverage_threshold(double delta, std::size_t trials) {
  return 1.0 - delta - 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

double upper_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidInput("quantile of an empty list");
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(q * static_cast<double>(values.size()) - 1e-9);
  const std::size_t k = std::clamp<std::size_t>(rank < 1.0 ? 1 : static_cast<std::size_t>(rank), 1, values.size());
  return values[k - 1];
}

namespace {

using Clock = std::chrono::steady_clock;

// Shared setup for experiments that draw n points per trial.
struct Simulation {
  const ExperimentConfig& config;
  const Space& space;
  bool noniid;
  Point b_star;
  std::vector<double> sigmas;
  std::vector<double> Cs;
  double D = 0.0;
  std::vector<AtomSampler> samplers;

  explicit Simulation(const ExperimentConfig& c)
      : config(c), space(c.distributions.front().space), noniid(c.distributions.size() > 1),
        b_star(reference_point(c.distributions.front().space)) {
    for (const auto& d : c.distributions) require_sphere_ball(d, c.bound.epsilon);

    std::vector<Point> support;
    for (const auto& d : c.distributions)
      for (const Point& p : d.sample.points()) support.push_back(p);
    const double tol = c.tol ? *c.tol : default_tolerance(space, support);
    SolverOptions tight;
    tight.tol = 0.1 * tol;

    b_star = population_barycenter(c.distributions.front(), tight).point;
    const DistributionSpec* previous = &c.distributions.front();
    double sigma_prev = 0.0, c_prev = 0.0;
    for (std::size_t i = 0; i < c.distributions.size(); ++i) {
      const DistributionSpec& d = c.distributions[i];
      const bool same = i > 0 && d.sample.points() == previous->sample.points() &&
                        d.sample.weights() == previous->sample.weights();
      if (!same) {
        if (i > 0) {
          const Point b = population_barycenter(d, tight).point;
          const double gap = dist(space, b, b_star);
          if (gap > tol)
            throw InvalidInput("distribution " + std::to_string(i) + " ('" + d.label +
                               "') has its barycenter at distance " + std::to_string(gap) +
                               " from that of the first distribution; non-identical sampling needs a shared barycenter");
        }
        const DistributionStats s = distribution_stats(d, b_star);
        sigma_prev = s.sigma;
        c_prev = s.C;
        previous = &d;
      }
      sigmas.push_back(sigma_prev);
      Cs.push_back(c_prev);
      samplers.emplace_back(d.sample);
    }
    D = diameter(space, support);
    if (!noniid) {
      sigmas.assign(c.n, sigmas.front());
      Cs.assign(c.n, Cs.front());
    }
  }

  double sigma() const {
    double acc = 0.0;
    for (double s : sigmas) acc += s * s;
    return std::sqrt(acc / static_cast<double>(sigmas.size()));
  }
  double C() const { return *std::max_element(Cs.begin(), Cs.end()); }

  std::vector<Point> draw(RandomStream& rng) const {
    std::vector<Point> pts;
    pts.reserve(config.n);
    for (std::size_t k = 0; k < config.n; ++k) {
      const std::size_t which = noniid ? k : 0;
      pts.push_back(config.distributions[which].sample.points()[samplers[which].draw(rng)]);
    }
    return pts;
  }

  Point estimate(const std::vector<Point>& pts) const {
    if (config.estimator == Estimator::inductive) return inductive_barycenter(space, pts);
    // Collapse repeated draws into exact weights so the solver works on the
    // distinct atoms only.
    std::vector<Point> atoms;
    std::vector<std::int64_t> counts;
    for (const Point& p : pts) {
      auto it = std::find(atoms.begin(), atoms.end(), p);
      if (it == atoms.end()) {
        atoms.push_back(p);
        counts.push_back(1);
      } else {
        ++counts[static_cast<std::size_t>(it - atoms.begin())];
      }
    }
    std::vector<Rational> w;
    for (std::int64_t k : counts) w.emplace_back(k, static_cast<std::int64_t>(pts.size()));
    SolverOptions opt;
    opt.tol = config.tol;
    return weighted_barycenter(space, WeightedSample(std::move(atoms), std::move(w)), opt).point;
  }

  std::vector<double> run() const {
    std::vector<double> out(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t i) {
      RandomStream rng = RandomStream::derive(config.seed, i);
      try {
        out[i] = dist(space, estimate(draw(rng)), b_star);
      } catch (const ConvergenceFailure& e) {
        throw ConvergenceFailure("trial " + std::to_string(i) + ": " + e.what(), e.last_displacement(),
                                 e.iterations());
      }
    });
    return out;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

TrialReport run_concentration(const ExperimentConfig& config) {
  validate(config);
  const auto t0 = Clock::now();
  const Simulation sim(config);

  TrialReport r;
  r.label = config.distributions.front().label;
  r.bound_name = config.bound.name;
  r.estimator = config.estimator;
  r.n = config.n;
  r.trials = config.trials;
  r.delta = config.delta;
  r.seed = config.seed;
  r.sigma = sim.sigma();
  r.C = sim.C();
  r.D = sim.D;
  if (sim.noniid) {
    r.sigmas = sim.sigmas;
    r.Cs = sim.Cs;
  }

  bounds::BoundQuery q;
  q.sigma = r.sigma;
  q.C = r.C;
  q.K = config.bound.K ? *config.bound.K : 2.0 * r.C;
  q.n = config.n;
  q.delta = config.delta;
  q.sigmas = sim.sigmas;
  q.Cs = sim.Cs;
  if (sim.space.kind() == SpaceKind::sphere) q.kappa = sim.space.curvature();
  q.epsilon = config.bound.epsilon;
  q.A = config.bound.A;
  q.p = config.bound.p;
  q.combine = config.bound.combine;
  r.bound = bounds::evaluate(config.bound.name, q).value * config.bound.scale;

  r.distances = sim.run();
  double sq = 0.0;
  std::size_t covered = 0;
  for (double d : r.distances) {
    sq += d * d;
    if (d <= r.bound) ++covered;
  }
  const double t = static_cast<double>(config.trials);
  r.mean_sq = sq / t;
  r.coverage = static_cast<double>(covered) / t;
  r.quantile = upper_quantile(r.distances, 1.0 - config.delta);
  r.threshold = coverage_threshold(config.delta, config.trials);
  r.pass = r.coverage >= r.threshold;

  if (config.estimator == Estimator::empirical) {
    if (sim.space.kind() == SpaceKind::metric_tree) {
      r.conjectural = true;
      r.assumption = "metric trees have no curvature lower bound; conjectural regime";
    } else if (sim.space.kind() != SpaceKind::sphere) {
      r.assumption = "curvature bounded below (labelled, not verified)";
    }
  }
  r.wall_seconds = seconds_since(t0);
  return r;
}

SturmReport verify_sturm_lln(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.kind = ExperimentKind::sturm_lln;
  validate(c);
  const auto t0 = Clock::now();
  const Simulation sim(c);

  SturmReport r;
  r.label = c.distributions.front().label;
  r.n = c.n;
  r.trials = c.trials;
  r.seed = c.seed;
  r.sigmas = sim.sigmas;
  r.bound = bounds::sturm_lln_bound(sim.sigmas, c.n);
  r.distances = sim.run();

  const double t = static_cast<double>(c.trials);
  double sum = 0.0;
  for (double d : r.distances) sum += d * d;
  r.mean_sq = sum / t;
  double var = 0.0;
  for (double d : r.distances) var += (d * d - r.mean_sq) * (d * d - r.mean_sq);
  r.standard_error = c.trials > 1 ? std::sqrt(var / (t - 1.0) / t) : 0.0;
  r.pass = r.mean_sq <= r.bound + 3.0 * r.standard_error;
  r.wall_seconds = seconds_since(t0);
  return r;
}

}  // namespace frechet::experiments
