#include <cmath>
#include <limits>

#include "frechet/barycenter.hpp"
#include "frechet/errors.hpp"
#include "frechet/geodesic_spaces.hpp"

namespace frechet {
namespace {

double fit(const Space& space, std::span<const Point> points, const Point& b) {
  double acc = 0.0;
  for (const auto& x : points) {
    const double d = dist(space, x, b);
    acc += d * d;
  }
  return acc / static_cast<double>(points.size());
}

}  // namespace

BruteForceResult brute_force_barycenter(const Space& space, std::span<const Point> points, const GridSpec& grid) {
  if (points.empty()) throw InvalidInput("barycenter of an empty point set is undefined");

  std::vector<Point> candidates = grid.candidates;
  double resolution = 0.0;
  if (candidates.empty()) {
    switch (space.kind()) {
      case SpaceKind::euclidean: {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(space.dimension());
        for (const auto& p : points) mean += p.coords();
        mean /= static_cast<double>(points.size());
        Point b = Point::vector(SpaceKind::euclidean, mean);
        const double f = fit(space, points, b);
        return BruteForceResult{std::move(b), f, 0.0, 1};
      }
      case SpaceKind::metric_tree: {
        if (!(grid.tree_step > 0.0)) throw InvalidInput("tree grid step must be positive");
        const MetricTree& tree = space.tree();
        for (std::size_t v = 0; v < tree.vertex_count(); ++v) candidates.push_back(Point::tree(TreePosition::at_vertex(v)));
        for (std::size_t e = 0; e < tree.edge_count(); ++e) {
          const double len = tree.edge(e).length;
          const auto pieces = static_cast<std::size_t>(std::ceil(len / grid.tree_step));
          for (std::size_t k = 1; k < pieces; ++k)
            candidates.push_back(Point::tree(TreePosition::on_edge(e, len * static_cast<double>(k) / static_cast<double>(pieces))));
        }
        resolution = grid.tree_step;
        break;
      }
      default:
        throw InvalidInput("brute-force barycenter on a " + std::string(to_string(space.kind())) +
                           " space needs a candidate set");
    }
  }

  std::size_t best = 0;
  double best_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double f = fit(space, points, candidates[i]);
    if (f < best_f) {
      best_f = f;
      best = i;
    }
  }
  return BruteForceResult{candidates[best], best_f, resolution, candidates.size()};
}

}  // namespace frechet
