#include "frechet/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frechet/detail/tangent.hpp"
#include "frechet/errors.hpp"
#include "frechet/geodesic_spaces.hpp"

namespace frechet {
namespace {

// Warm start budget for SolverKind::refined.
constexpr std::size_t kWarmCycles = 32;
constexpr double kWarmRelative = 1e-3;
constexpr double kArmijo = 1e-4;

struct Problem {
  const Space& space;
  std::vector<Point> atoms;
  std::vector<double> weights;
  std::vector<std::size_t> schedule;  // one period of the periodic sequence
};

struct CyclicOutcome {
  Point iterate;
  std::size_t cycles;
  double displacement;
  bool converged;
};

double objective(const Problem& pb, const Point& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pb.atoms.size(); ++i) {
    const double d = dist(pb.space, pb.atoms[i], b);
    acc += pb.weights[i] * d * d;
  }
  return acc;
}

// Inductive recursion over the periodic extension of `schedule`; counts the
// cycles completed after the first pass.
CyclicOutcome run_cyclic(const Problem& pb, double target, std::size_t max_cycles) {
  const auto& seq = pb.schedule;
  Point s = pb.atoms[seq.front()];
  std::size_t k = 1;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    ++k;
    s = geodesic_point(pb.space, s, pb.atoms[seq[j]], 1.0 / static_cast<double>(k));
  }
  std::size_t cycles = 0;
  double disp = std::numeric_limits<double>::infinity();
  while (cycles < max_cycles) {
    Point prev = s;
    for (std::size_t idx : seq) {
      ++k;
      s = geodesic_point(pb.space, s, pb.atoms[idx], 1.0 / static_cast<double>(k));
    }
    ++cycles;
    disp = dist(pb.space, prev, s);
    if (disp <= target) return {std::move(s), cycles, disp, true};
  }
  return {std::move(s), cycles, disp, false};
}

// Exact minimizer on a metric tree. Restricted to one edge, every squared
// distance is (t - a_i)^2 for an anchor a_i on the edge's line, so the
// objective is a single quadratic minimized at the weighted mean of anchors.
Point tree_exact(const Problem& pb) {
  const MetricTree& tree = pb.space.tree();
  if (tree.edge_count() == 0) return Point::tree(TreePosition::at_vertex(0));
  double best_value = std::numeric_limits<double>::infinity();
  TreePosition best;
  std::vector<double> anchors(pb.atoms.size());
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const auto& edge = tree.edge(e);
    const Point lo = Point::tree(TreePosition::at_vertex(edge.lo));
    const Point hi = Point::tree(TreePosition::at_vertex(edge.hi));
    double mean = 0.0;
    for (std::size_t i = 0; i < pb.atoms.size(); ++i) {
      const TreePosition& pos = pb.atoms[i].tree_position();
      if (!pos.is_vertex() && pos.edge == e) {
        anchors[i] = pos.offset;
      } else {
        const double dlo = dist(pb.space, pb.atoms[i], lo);
        const double dhi = dist(pb.space, pb.atoms[i], hi);
        anchors[i] = dlo <= dhi ? -dlo : edge.length + dhi;
      }
      mean += pb.weights[i] * anchors[i];
    }
    const double t = std::clamp(mean, 0.0, edge.length);
    double value = 0.0;
    for (std::size_t i = 0; i < pb.atoms.size(); ++i) value += pb.weights[i] * (t - anchors[i]) * (t - anchors[i]);
    if (value < best_value) {
      best_value = value;
      best = TreePosition::on_edge(e, t);
    }
  }
  return canonical(pb.space, Point::tree(best));
}

BarycenterResult solve(const Problem& pb, double tol, const SolverOptions& opt) {
  if (!(tol > 0.0)) throw InvalidInput("solver tolerance must be positive");

  bool single = std::all_of(pb.schedule.begin(), pb.schedule.end(),
                            [&](std::size_t i) { return i == pb.schedule.front(); });
  if (single) {
    const Point& x = pb.atoms[pb.schedule.front()];
    return BarycenterResult{x, 0, 0.0, objective(pb, x)};
  }

  if (opt.solver == SolverKind::cyclic) {
    CyclicOutcome out = run_cyclic(pb, tol, opt.max_cycles);
    if (!out.converged)
      throw ConvergenceFailure("cyclic barycenter iteration did not reach tol=" + std::to_string(tol) + " within " +
                                   std::to_string(opt.max_cycles) + " cycles (last displacement " +
                                   std::to_string(out.displacement) + ")",
                               out.displacement, out.cycles);
    const double f = objective(pb, out.iterate);
    return BarycenterResult{std::move(out.iterate), out.cycles, out.displacement, f};
  }

  if (pb.space.kind() == SpaceKind::metric_tree) {
    Point b = tree_exact(pb);
    const double f = objective(pb, b);
    return BarycenterResult{std::move(b), 1, 0.0, f};
  }

  double scale = 0.0;
  for (const auto& a : pb.atoms) scale = std::max(scale, dist(pb.space, pb.atoms.front(), a));
  CyclicOutcome warm = run_cyclic(pb, std::max(tol, kWarmRelative * scale), std::min(kWarmCycles, opt.max_cycles));
  Point b = std::move(warm.iterate);
  std::size_t iterations = warm.cycles;
  double last = warm.displacement;

  for (std::size_t r = 0; r < opt.max_refinements; ++r) {
    double step = 1.0;
    detail::TangentStep ts = detail::tangent_mean_step(pb.space, b, pb.atoms, pb.weights, step);
    const double g = ts.mean_log_norm;
    ++iterations;
    if (g <= tol) {
      const double f = objective(pb, ts.point);
      return BarycenterResult{std::move(ts.point), iterations, g, f};
    }
    // Backtrack until the objective decreases enough (gradient of F is -2 * mean log).
    const double f0 = ts.objective_at_base;
    Point candidate = std::move(ts.point);
    while (objective(pb, candidate) > f0 - kArmijo * 2.0 * step * g * g && step > 1e-12) {
      step *= 0.5;
      candidate = detail::tangent_mean_step(pb.space, b, pb.atoms, pb.weights, step).point;
    }
    last = step * g;
    b = std::move(candidate);
    if (last <= tol) {
      const double f = objective(pb, b);
      return BarycenterResult{std::move(b), iterations, last, f};
    }
  }
  throw ConvergenceFailure("barycenter refinement did not reach tol=" + std::to_string(tol) + " within " +
                               std::to_string(opt.max_refinements) + " steps (last displacement " +
                               std::to_string(last) + ")",
                           last, iterations);
}

void require_nonempty(std::span<const Point> points) {
  if (points.empty()) throw InvalidInput("barycenter of an empty point set is undefined");
}

}  // namespace

WeightedSample WeightedSample::uniform(std::vector<Point> points) {
  const auto n = static_cast<std::int64_t>(points.size());
  if (n == 0) throw InvalidInput("weighted sample needs at least one point");
  std::vector<Rational> w(points.size(), Rational(1, n));
  return WeightedSample(std::move(points), std::move(w));
}

WeightedSample::WeightedSample(std::vector<Point> points, std::vector<Rational> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw InvalidInput("weighted sample needs at least one point");
  if (points_.size() != weights_.size())
    throw InvalidInput("weighted sample has " + std::to_string(points_.size()) + " points but " +
                       std::to_string(weights_.size()) + " weights");
  Rational total;
  for (const auto& w : weights_) {
    if (w < Rational(0)) throw InvalidInput("weights must be non-negative, got " + w.str());
    total += w;
  }
  if (total != Rational(1)) throw InvalidInput("weights must sum to exactly 1, got " + total.str());
}

std::vector<double> WeightedSample::weights_as_double() const {
  std::vector<double> out;
  out.reserve(weights_.size());
  for (const auto& w : weights_) out.push_back(w.to_double());
  return out;
}

Point inductive_barycenter(const Space& space, std::span<const Point> points) {
  require_nonempty(points);
  for (const auto& p : points) require_valid(space, p);
  Point s = points.front();
  for (std::size_t k = 2; k <= points.size(); ++k)
    s = geodesic_point(space, s, points[k - 1], 1.0 / static_cast<double>(k));
  return s;
}

double diameter(const Space& space, std::span<const Point> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, dist(space, points[i], points[j]));
  return d;
}

double default_tolerance(const Space& space, std::span<const Point> points) {
  // Past a few hundred points use 2 * eccentricity of the first point, which
  // is within a factor 2 of the diameter.
  double scale = 0.0;
  if (points.size() <= 256) {
    scale = diameter(space, points);
  } else {
    for (const auto& p : points) scale = std::max(scale, dist(space, points.front(), p));
    scale *= 2.0;
  }
  return 1e-8 * (1.0 + scale);
}

BarycenterResult empirical_barycenter(const Space& space, std::span<const Point> points, const SolverOptions& options) {
  require_nonempty(points);
  for (const auto& p : points) require_valid(space, p);
  Problem pb{space, std::vector<Point>(points.begin(), points.end()),
             std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size())),
             std::vector<std::size_t>(points.size())};
  std::iota(pb.schedule.begin(), pb.schedule.end(), std::size_t{0});
  const double tol = options.tol.value_or(default_tolerance(space, points));
  return solve(pb, tol, options);
}

BarycenterResult weighted_barycenter(const Space& space, const WeightedSample& sample, const SolverOptions& options) {
  Problem pb{space, {}, {}, {}};
  std::vector<Rational> kept;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample.weights()[i] == Rational(0)) continue;
    require_valid(space, sample.points()[i]);
    pb.atoms.push_back(sample.points()[i]);
    kept.push_back(sample.weights()[i]);
  }
  std::int64_t q = 1;
  for (const auto& w : kept) q = checked_lcm(q, w.den());
  const auto n = static_cast<std::int64_t>(sample.size());
  if (q > static_cast<std::int64_t>(options.replication_cap) / n)
    throw InvalidInput("weighted barycenter needs n*Q = " + std::to_string(n) + "*" + std::to_string(q) +
                       " replicated points, above the cap of " + std::to_string(options.replication_cap));

  std::vector<std::int64_t> counts;
  std::int64_t most = 0;
  for (const auto& w : kept) {
    counts.push_back(w.num() * (q / w.den()));
    pb.weights.push_back(w.to_double());
    most = std::max(most, counts.back());
  }
  // Round-robin by residue: copy r of every atom that has more than r copies.
  for (std::int64_t r = 0; r < most; ++r)
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] > r) pb.schedule.push_back(i);

  const double tol = options.tol.value_or(default_tolerance(space, pb.atoms));
  return solve(pb, tol, options);
}

double frechet_variance(const Space& space, const WeightedSample& sample, const Point& b) {
  require_valid(space, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double d = dist(space, sample.points()[i], b);
    acc += sample.weights()[i].to_double() * d * d;
  }
  return acc;
}

double pairwise_variance_estimate(const Space& space, std::span<const Point> points) {
  require_nonempty(points);
  double acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = dist(space, points[i], points[j]);
      acc += 2.0 * d * d;
    }
  }
  const auto n = static_cast<double>(points.size());
  return acc / (n * n);
}

}  // namespace frechet
