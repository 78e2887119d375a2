#include "frechet/geodesic_spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "frechet/errors.hpp"
#include "spd.hpp"

namespace frechet {
namespace {

double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index last = x.size() - 1;
  return x.head(last).dot(y.head(last)) - x[last] * y[last];
}

std::string describe_size(std::size_t expected, Eigen::Index got) {
  return "expected " + std::to_string(expected) + " coordinates, got " + std::to_string(got);
}

std::optional<Diagnostic> validate_vector(const Space& space, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != space.ambient_size())
    return Diagnostic{Violation::wrong_size, describe_size(space.ambient_size(), x.size())};
  if (!x.allFinite()) return Diagnostic{Violation::not_finite, "coordinates must be finite"};
  const double r2 = space.radius() * space.radius();
  if (space.kind() == SpaceKind::hyperbolic) {
    const double last = x[x.size() - 1];
    if (!(last > 0.0))
      return Diagnostic{Violation::hyperboloid_upper_sheet, "last (time-like) coordinate must be positive"};
    const double q = minkowski(x, x);
    const double scale = std::max(r2, last * last);
    if (std::abs(q + r2) > Tolerance::point * scale)
      return Diagnostic{Violation::hyperboloid_sheet, "Minkowski norm <x,x> = " + std::to_string(q) +
                                                          ", expected " + std::to_string(-r2)};
  } else if (space.kind() == SpaceKind::sphere) {
    const double n = x.norm();
    if (std::abs(n - space.radius()) > Tolerance::point * space.radius())
      return Diagnostic{Violation::sphere_norm,
                        "norm " + std::to_string(n) + ", expected " + std::to_string(space.radius())};
  }
  return std::nullopt;
}

std::optional<Diagnostic> validate_matrix(const Space& space, const Eigen::MatrixXd& m) {
  const auto p = static_cast<Eigen::Index>(space.dimension());
  if (m.rows() != p || m.cols() != p)
    return Diagnostic{Violation::wrong_size, "expected a " + std::to_string(p) + "x" + std::to_string(p) + " matrix"};
  if (!m.allFinite()) return Diagnostic{Violation::not_finite, "matrix entries must be finite"};
  const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > Tolerance::point * scale)
    return Diagnostic{Violation::not_symmetric, "matrix is not symmetric"};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(spd::symmetrize(m), Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  if (!(lo > 0.0))
    return Diagnostic{Violation::not_positive_definite, "smallest eigenvalue " + std::to_string(lo) + " is not positive"};
  return std::nullopt;
}

std::optional<Diagnostic> validate_tree(const Space& space, const TreePosition& pos) {
  const MetricTree& tree = space.tree();
  if (pos.is_vertex()) {
    if (pos.vertex >= tree.vertex_count()) return Diagnostic{Violation::tree_index, "vertex index out of range"};
    return std::nullopt;
  }
  if (pos.edge >= tree.edge_count()) return Diagnostic{Violation::tree_index, "edge index out of range"};
  const double len = tree.edge(pos.edge).length;
  if (!std::isfinite(pos.offset) || pos.offset < 0.0 || pos.offset > len)
    return Diagnostic{Violation::tree_offset,
                      "offset " + std::to_string(pos.offset) + " outside [0, " + std::to_string(len) + "]"};
  return std::nullopt;
}

// Cheap structural checks for the hot paths; full invariants are validate_point's job.
void check_pair(const Space& space, const Point& x, const Point& y) {
  if (x.kind() != space.kind() || y.kind() != space.kind())
    throw InvalidInput("point tagged '" + std::string(to_string(x.kind() != space.kind() ? x.kind() : y.kind())) +
                       "' used with a " + std::string(to_string(space.kind())) + " space");
  for (const Point* p : {&x, &y}) {
    switch (space.kind()) {
      case SpaceKind::spd_affine: {
        const auto& m = p->matrix();
        const auto sz = static_cast<Eigen::Index>(space.dimension());
        if (m.rows() != sz || m.cols() != sz) throw InvalidInput("SPD matrix has the wrong size");
        break;
      }
      case SpaceKind::metric_tree:
        if (auto d = validate_tree(space, p->tree_position())) throw InvalidInput(d->message);
        break;
      default:
        if (static_cast<std::size_t>(p->coords().size()) != space.ambient_size())
          throw InvalidInput(describe_size(space.ambient_size(), p->coords().size()));
    }
  }
}

// (endpoint vertex, distance from the position to it)
std::array<std::pair<std::size_t, double>, 2> tree_endpoints(const MetricTree& tree, const TreePosition& p,
                                                             std::size_t& count) {
  if (p.is_vertex()) {
    count = 1;
    return {{{p.vertex, 0.0}, {p.vertex, 0.0}}};
  }
  const auto& e = tree.edge(p.edge);
  count = 2;
  return {{{e.lo, p.offset}, {e.hi, e.length - p.offset}}};
}

struct TreeRoute {
  double length;
  std::size_t from_vertex;  // exit vertex of x's edge
  double from_offset;
  std::size_t to_vertex;  // entry vertex of y's edge
  double to_offset;
};

TreeRoute tree_route(const MetricTree& tree, const TreePosition& x, const TreePosition& y) {
  std::size_t nx = 0, ny = 0;
  auto ex = tree_endpoints(tree, x, nx);
  auto ey = tree_endpoints(tree, y, ny);
  TreeRoute best{std::numeric_limits<double>::infinity(), 0, 0.0, 0, 0.0};
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      double len = ex[i].second + tree.vertex_distance(ex[i].first, ey[j].first) + ey[j].second;
      if (len < best.length) best = {len, ex[i].first, ex[i].second, ey[j].first, ey[j].second};
    }
  }
  return best;
}

double tree_dist(const MetricTree& tree, const TreePosition& x, const TreePosition& y) {
  if (!x.is_vertex() && !y.is_vertex() && x.edge == y.edge) return std::abs(x.offset - y.offset);
  return tree_route(tree, x, y).length;
}

TreePosition canonical_tree(const MetricTree& tree, TreePosition p) {
  if (p.is_vertex()) return p;
  const auto& e = tree.edge(p.edge);
  if (p.offset <= 0.0) return TreePosition::at_vertex(e.lo);
  if (p.offset >= e.length) return TreePosition::at_vertex(e.hi);
  return p;
}

// Position at distance w from vertex `from` along the edge to adjacent vertex `to`.
TreePosition along_edge(const MetricTree& tree, std::size_t from, std::size_t to, double w) {
  const std::size_t e = tree.edge_between(from, to);
  const auto& edge = tree.edge(e);
  w = std::clamp(w, 0.0, edge.length);
  return canonical_tree(tree, TreePosition::on_edge(e, from == edge.lo ? w : edge.length - w));
}

TreePosition tree_geodesic(const MetricTree& tree, const TreePosition& x, const TreePosition& y, double t) {
  if (!x.is_vertex() && !y.is_vertex() && x.edge == y.edge)
    return canonical_tree(tree, TreePosition::on_edge(x.edge, x.offset + t * (y.offset - x.offset)));
  const TreeRoute route = tree_route(tree, x, y);
  double w = t * route.length;
  if (!x.is_vertex()) {
    if (w <= route.from_offset) {
      const auto& e = tree.edge(x.edge);
      const double off = route.from_vertex == e.lo ? x.offset - w : x.offset + w;
      return canonical_tree(tree, TreePosition::on_edge(x.edge, std::clamp(off, 0.0, e.length)));
    }
    w -= route.from_offset;
  }
  std::size_t cur = route.from_vertex;
  while (cur != route.to_vertex) {
    const std::size_t nxt = tree.next_hop(cur, route.to_vertex);
    const double len = tree.vertex_distance(cur, nxt);
    if (w < len) return along_edge(tree, cur, nxt, w);
    w -= len;
    cur = nxt;
  }
  if (y.is_vertex() || w <= 0.0) return TreePosition::at_vertex(cur);
  const auto& e = tree.edge(y.edge);
  w = std::min(w, route.to_offset);
  return canonical_tree(tree, TreePosition::on_edge(y.edge, cur == e.lo ? w : e.length - w));
}

double hyperbolic_dist(const Space& space, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::VectorXd diff = x - y;
  const double chord2 = std::max(0.0, minkowski(diff, diff));
  const double r = space.radius();
  return 2.0 * r * std::asinh(std::sqrt(chord2) / (2.0 * r));
}

Eigen::VectorXd project_hyperboloid(const Space& space, Eigen::VectorXd p) {
  const Eigen::Index last = p.size() - 1;
  p[last] = std::sqrt(space.radius() * space.radius() + p.head(last).squaredNorm());
  return p;
}

double sphere_angle(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("geodesic parameter t=" + std::to_string(t) + " outside [0, 1]");
}

}  // namespace

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::space_mismatch: return "space_mismatch";
    case Violation::wrong_size: return "wrong_size";
    case Violation::not_finite: return "not_finite";
    case Violation::hyperboloid_sheet: return "hyperboloid_sheet";
    case Violation::hyperboloid_upper_sheet: return "hyperboloid_upper_sheet";
    case Violation::not_symmetric: return "not_symmetric";
    case Violation::not_positive_definite: return "not_positive_definite";
    case Violation::sphere_norm: return "sphere_norm";
    case Violation::tree_index: return "tree_index";
    case Violation::tree_offset: return "tree_offset";
  }
  return "unknown";
}

std::optional<Diagnostic> validate_point(const Space& space, const Point& p) {
  if (p.kind() != space.kind())
    return Diagnostic{Violation::space_mismatch, "point tagged '" + std::string(to_string(p.kind())) +
                                                     "' does not belong to a " + std::string(to_string(space.kind())) +
                                                     " space"};
  switch (space.kind()) {
    case SpaceKind::spd_affine: return validate_matrix(space, p.matrix());
    case SpaceKind::metric_tree: return validate_tree(space, p.tree_position());
    default: return validate_vector(space, p.coords());
  }
}

void require_valid(const Space& space, const Point& p) {
  if (auto d = validate_point(space, p)) throw InvalidInput("invalid point (" + std::string(to_string(d->violation)) + "): " + d->message);
}

double dist(const Space& space, const Point& x, const Point& y) {
  check_pair(space, x, y);
  switch (space.kind()) {
    case SpaceKind::euclidean: return (x.coords() - y.coords()).norm();
    case SpaceKind::hyperbolic: return hyperbolic_dist(space, x.coords(), y.coords());
    case SpaceKind::spd_affine:
      if (x.matrix().llt().info() != Eigen::Success || y.matrix().llt().info() != Eigen::Success)
        throw InvalidInput("SPD point is not positive definite");
      if (x.matrix() == y.matrix()) return 0.0;
      return spd::distance(x.matrix(), y.matrix());
    case SpaceKind::metric_tree: return tree_dist(space.tree(), x.tree_position(), y.tree_position());
    case SpaceKind::sphere: return space.radius() * sphere_angle(x.coords(), y.coords());
  }
  return 0.0;
}

Point geodesic_point(const Space& space, const Point& x, const Point& y, double t) {
  check_pair(space, x, y);
  check_t(t);
  switch (space.kind()) {
    case SpaceKind::euclidean:
      return Point::vector(SpaceKind::euclidean, x.coords() + t * (y.coords() - x.coords()));
    case SpaceKind::hyperbolic: {
      const double s = hyperbolic_dist(space, x.coords(), y.coords()) / space.radius();
      if (s == 0.0 || t == 0.0) return x;
      if (t == 1.0) return y;
      const double sh = std::sinh(s);
      Eigen::VectorXd p = (std::sinh((1.0 - t) * s) / sh) * x.coords() + (std::sinh(t * s) / sh) * y.coords();
      return Point::vector(SpaceKind::hyperbolic, project_hyperboloid(space, std::move(p)));
    }
    case SpaceKind::spd_affine: {
      if (x.matrix().llt().info() != Eigen::Success || y.matrix().llt().info() != Eigen::Success)
        throw InvalidInput("SPD point is not positive definite");
      if (t == 0.0) return x;
      if (t == 1.0) return y;
      return Point::matrix(spd::geodesic(x.matrix(), y.matrix(), t));
    }
    case SpaceKind::metric_tree:
      return Point::tree(tree_geodesic(space.tree(), x.tree_position(), y.tree_position(), t));
    case SpaceKind::sphere: {
      const auto& a = x.coords();
      const auto& b = y.coords();
      if ((a + b).norm() <= 2.0 * Tolerance::point * space.radius())
        throw NonUniqueGeodesic("antipodal sphere points: the geodesic between them is not unique");
      const double theta = sphere_angle(a, b);
      if (theta == 0.0 || t == 0.0) return x;
      if (t == 1.0) return y;
      const double st = std::sin(theta);
      Eigen::VectorXd p = (std::sin((1.0 - t) * theta) / st) * a + (std::sin(t * theta) / st) * b;
      p *= space.radius() / p.norm();
      return Point::vector(SpaceKind::sphere, std::move(p));
    }
  }
  return x;
}

double product_l1_dist(const Space& space, std::span<const Point> xs, std::span<const Point> ys) {
  if (xs.size() != ys.size())
    throw InvalidInput("product distance needs tuples of equal length (" + std::to_string(xs.size()) + " vs " +
                       std::to_string(ys.size()) + ")");
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) total += dist(space, xs[i], ys[i]);
  return total;
}

Point canonical(const Space& space, Point p) {
  if (space.kind() != SpaceKind::metric_tree || p.kind() != SpaceKind::metric_tree) return p;
  return Point::tree(canonical_tree(space.tree(), p.tree_position()));
}

Point reference_point(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::euclidean: return Point::vector(space.kind(), Eigen::VectorXd::Zero(space.dimension()));
    case SpaceKind::hyperbolic:
    case SpaceKind::sphere: {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(space.ambient_size());
      v[v.size() - 1] = space.radius();
      return Point::vector(space.kind(), std::move(v));
    }
    case SpaceKind::spd_affine:
      return Point::matrix(Eigen::MatrixXd::Identity(space.dimension(), space.dimension()));
    case SpaceKind::metric_tree: return Point::tree(TreePosition::at_vertex(0));
  }
  throw InvalidInput("unknown space kind");
}

}  // namespace frechet
