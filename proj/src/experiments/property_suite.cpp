#include <algorithm>
#include <cmath>
#include <sstream>

#include "frechet/errors.hpp"
#include "frechet/experiments.hpp"
#include "frechet/geodesic_spaces.hpp"

namespace frechet::experiments {
namespace {

std::string describe(const Space& space, const Point& p) {
  std::ostringstream os;
  os.precision(17);
  switch (space.kind()) {
    case SpaceKind::metric_tree: {
      const TreePosition& t = p.tree_position();
      if (t.is_vertex()) {
        os << "vertex " << space.tree().vertex_id(t.vertex);
      } else {
        const auto& e = space.tree().edge(t.edge);
        os << "edge " << space.tree().vertex_id(e.lo) << "-" << space.tree().vertex_id(e.hi) << " at " << t.offset;
      }
      break;
    }
    case SpaceKind::spd_affine: {
      const Eigen::MatrixXd& m = p.matrix();
      os << "[";
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
      }
      os << "]";
      break;
    }
    default: {
      const Eigen::VectorXd& v = p.coords();
      os << "(";
      for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
      os << ")";
    }
  }
  return os.str();
}

void record(CheckResult& r, double excess, bool violated, const std::string& witness) {
  ++r.checked;
  if (r.checked == 1 || excess > r.max_excess) {
    r.max_excess = excess;
    if (violated) r.witness = witness;
  }
  if (violated) ++r.violations;
}

std::vector<Point> random_points(const Space& space, RandomStream& rng, std::size_t n) {
  std::vector<Point> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_point(space, rng));
  return v;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.violations == 0; });
}

CheckResult check_midpoint_inequality(const Space& space, RandomStream& rng, std::size_t count) {
  if (!space.is_npc()) throw InvalidInput("the midpoint inequality is checked on non-positively curved spaces only");
  CheckResult r;
  r.name = "midpoint_inequality";
  for (std::size_t k = 0; k < count; ++k) {
    const Point x = random_point(space, rng), y = random_point(space, rng), z = random_point(space, rng);
    const Point m = geodesic_point(space, x, y, 0.5);
    const double zx = dist(space, z, x), zy = dist(space, z, y), xy = dist(space, x, y), zm = dist(space, z, m);
    const double gap = zm * zm - (0.5 * (zx * zx + zy * zy) - 0.25 * xy * xy);
    const double scale = std::max({zx, zy, xy});
    const bool bad = gap > Tolerance::npc * (1.0 + scale * scale);
    record(r, gap, bad,
           bad ? "x=" + describe(space, x) + " y=" + describe(space, y) + " z=" + describe(space, z) +
                     " excess=" + std::to_string(gap)
               : "");
  }
  return r;
}

CheckResult check_constant_speed(const Space& space, RandomStream& rng, std::size_t count) {
  CheckResult r;
  r.name = "constant_speed";
  for (std::size_t k = 0; k < count; ++k) {
    const Point x = random_point(space, rng), y = random_point(space, rng);
    const double s = rng.uniform01(), t = rng.uniform01();
    const double dxy = dist(space, x, y);
    const double slack = Tolerance::geodesic * (1.0 + dxy);
    const Point gs = geodesic_point(space, x, y, s), gt = geodesic_point(space, x, y, t);
    double err = std::abs(dist(space, gs, gt) - std::abs(s - t) * dxy);
    // Endpoints and reversal.
    err = std::max(err, dist(space, geodesic_point(space, x, y, 0.0), x));
    err = std::max(err, dist(space, geodesic_point(space, x, y, 1.0), y));
    err = std::max(err, dist(space, geodesic_point(space, y, x, 1.0 - s), gs));
    const bool bad = err > slack;
    record(r, err - slack, bad,
           bad ? "x=" + describe(space, x) + " y=" + describe(space, y) + " s=" + std::to_string(s) +
                     " t=" + std::to_string(t) + " error=" + std::to_string(err)
               : "");
  }
  return r;
}

CheckResult check_lipschitz(const Space& space, RandomStream& rng, std::size_t count, Estimator estimator) {
  if (!space.is_npc()) throw InvalidInput("the Lipschitz check applies to non-positively curved spaces only");
  CheckResult r;
  r.name = std::string("lipschitz_") + std::string(to_string(estimator));
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 2 + rng.uniform_int(9);
    const std::vector<Point> xs = random_points(space, rng, n);
    std::vector<Point> ys;
    for (std::size_t i = 0; i < n; ++i) {
      const Point z = random_point(space, rng);
      ys.push_back(geodesic_point(space, xs[i], z, rng.uniform(0.0, 0.5)));
    }
    std::vector<Point> all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    const double scale = diameter(space, all);

    double tol = 0.0;
    double moved;
    if (estimator == Estimator::inductive) {
      moved = dist(space, inductive_barycenter(space, xs), inductive_barycenter(space, ys));
    } else {
      tol = std::max(default_tolerance(space, xs), default_tolerance(space, ys));
      moved = dist(space, empirical_barycenter(space, xs).point, empirical_barycenter(space, ys).point);
    }
    const double d1 = product_l1_dist(space, xs, ys);
    const double allowed = d1 / static_cast<double>(n) + 2.0 * tol + 1e-8 * (1.0 + scale);
    const bool bad = moved > allowed;
    record(r, moved - allowed, bad,
           bad ? "n=" + std::to_string(n) + " d(T(xs),T(ys))=" + std::to_string(moved) +
                     " allowed=" + std::to_string(allowed) + " x1=" + describe(space, xs[0])
               : "");
  }
  return r;
}

CheckResult check_variance_sandwich(const Space& space, RandomStream& rng, std::size_t count) {
  CheckResult r;
  r.name = "variance_sandwich";
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 2 + rng.uniform_int(9);
    const std::vector<Point> xs = random_points(space, rng, n);
    const double var = empirical_barycenter(space, xs).objective;
    const double pairwise = pairwise_variance_estimate(space, xs);
    // Relative distance outside [var, 2 var].
    const double excess = std::max(var - pairwise, pairwise - 2.0 * var) / std::max(var, 1e-300);
    const bool bad = excess > 1e-9;
    std::ostringstream w;
    if (bad) {
      w.precision(17);
      w << "n=" << n << " variance=" << var << " pairwise=" << pairwise << " ratio=" << pairwise / var
        << " x1=" << describe(space, xs[0]);
    }
    record(r, excess, bad, w.str());
  }
  return r;
}

SuiteReport npc_property_suite(const Space& space, std::uint64_t seed, const SuiteSizes& sizes,
                               const std::vector<std::string>& only) {
  const auto wanted = [&](std::string_view name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  SuiteReport rep;
  rep.space = std::string(to_string(space.kind()));
  rep.seed = seed;
  // Each check draws from its own stream so filtering does not shift the others.
  if (space.is_npc() && wanted("midpoint_inequality")) {
    RandomStream rng = RandomStream::derive(seed, 0);
    rep.checks.push_back(check_midpoint_inequality(space, rng, sizes.triples));
  }
  if (wanted("constant_speed")) {
    RandomStream rng = RandomStream::derive(seed, 1);
    rep.checks.push_back(check_constant_speed(space, rng, sizes.geodesics));
  }
  if (space.is_npc() && wanted("lipschitz_inductive")) {
    RandomStream rng = RandomStream::derive(seed, 2);
    rep.checks.push_back(check_lipschitz(space, rng, sizes.lipschitz, Estimator::inductive));
  }
  if (space.is_npc() && wanted("lipschitz_empirical")) {
    RandomStream rng = RandomStream::derive(seed, 3);
    rep.checks.push_back(check_lipschitz(space, rng, sizes.lipschitz, Estimator::empirical));
  }
  if (wanted("variance_sandwich")) {
    RandomStream rng = RandomStream::derive(seed, 4);
    rep.checks.push_back(check_variance_sandwich(space, rng, sizes.sandwich));
  }
  return rep;
}

}  // namespace frechet::experiments
