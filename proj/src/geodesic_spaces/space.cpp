#include "frechet/space.hpp"

#include <cmath>

#include "frechet/errors.hpp"

namespace frechet {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::hyperbolic: return "hyperbolic";
    case SpaceKind::spd_affine: return "spd";
    case SpaceKind::metric_tree: return "tree";
    case SpaceKind::sphere: return "sphere";
  }
  return "unknown";
}

Space Space::euclidean(std::size_t dim) {
  if (dim == 0) throw InvalidInput("euclidean space needs dimension >= 1");
  return Space(SpaceKind::euclidean, dim, 0.0);
}

Space Space::hyperbolic(double kappa, std::size_t dim) {
  if (dim == 0) throw InvalidInput("hyperbolic space needs dimension >= 1");
  if (!(kappa < 0.0) || !std::isfinite(kappa)) throw InvalidInput("hyperbolic space needs curvature kappa < 0");
  Space s(SpaceKind::hyperbolic, dim, kappa);
  s.radius_ = 1.0 / std::sqrt(-kappa);
  return s;
}

Space Space::spd_affine(std::size_t p) {
  if (p == 0) throw InvalidInput("SPD space needs matrix size p >= 1");
  return Space(SpaceKind::spd_affine, p, 0.0);
}

Space Space::sphere(double kappa, std::size_t dim) {
  if (dim == 0) throw InvalidInput("sphere needs dimension >= 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidInput("sphere needs curvature kappa > 0");
  Space s(SpaceKind::sphere, dim, kappa);
  s.radius_ = 1.0 / std::sqrt(kappa);
  return s;
}

Space Space::metric_tree(TreeStructure tree) {
  auto built = std::make_shared<const MetricTree>(std::move(tree));
  Space s(SpaceKind::metric_tree, built->vertex_count(), 0.0);
  s.tree_ = std::move(built);
  return s;
}

std::size_t Space::ambient_size() const noexcept {
  switch (kind_) {
    case SpaceKind::euclidean: return dim_;
    case SpaceKind::hyperbolic:
    case SpaceKind::sphere: return dim_ + 1;
    case SpaceKind::spd_affine: return dim_ * dim_;
    case SpaceKind::metric_tree: return 0;
  }
  return 0;
}

const MetricTree& Space::tree() const {
  if (!tree_) throw InvalidInput("space is not a metric tree");
  return *tree_;
}

bool operator==(const Space& a, const Space& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_ || a.kappa_ != b.kappa_) return false;
  if (a.kind_ != SpaceKind::metric_tree) return true;
  if (a.tree_ == b.tree_) return true;
  const auto& ta = a.tree_->structure();
  const auto& tb = b.tree_->structure();
  if (ta.vertices != tb.vertices || ta.edges.size() != tb.edges.size()) return false;
  for (std::size_t i = 0; i < ta.edges.size(); ++i) {
    if (ta.edges[i].u != tb.edges[i].u || ta.edges[i].v != tb.edges[i].v ||
        ta.edges[i].length != tb.edges[i].length)
      return false;
  }
  return true;
}

Point Point::vector(SpaceKind kind, Eigen::VectorXd coords) {
  if (kind == SpaceKind::spd_affine || kind == SpaceKind::metric_tree)
    throw InvalidInput(std::string("vector payload given for a ") + std::string(to_string(kind)) + " point");
  return Point(kind, std::move(coords));
}

Point Point::matrix(Eigen::MatrixXd m) { return Point(SpaceKind::spd_affine, std::move(m)); }

Point Point::tree(TreePosition pos) { return Point(SpaceKind::metric_tree, pos); }

const Eigen::VectorXd& Point::coords() const {
  if (auto* v = std::get_if<Eigen::VectorXd>(&payload_)) return *v;
  throw InvalidInput("point has no coordinate vector");
}

const Eigen::MatrixXd& Point::matrix() const {
  if (auto* m = std::get_if<Eigen::MatrixXd>(&payload_)) return *m;
  throw InvalidInput("point has no matrix payload");
}

const TreePosition& Point::tree_position() const {
  if (auto* t = std::get_if<TreePosition>(&payload_)) return *t;
  throw InvalidInput("point has no tree position");
}

bool operator==(const Point& a, const Point& b) {
  if (a.kind_ != b.kind_ || a.payload_.index() != b.payload_.index()) return false;
  return std::visit(
      [&](const auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.payload_);
        if constexpr (std::is_same_v<T, TreePosition>) {
          return lhs == rhs;
        } else {
          return lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && lhs == rhs;
        }
      },
      a.payload_);
}

}  // namespace frechet
