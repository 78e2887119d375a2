#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frechet {

enum class SpaceKind { euclidean, hyperbolic, spd_affine, metric_tree, sphere };

std::string_view to_string(SpaceKind kind);

struct TreeEdge {
  std::string u;
  std::string v;
  double length = 0.0;
};

/// User-facing description of a metric tree: vertex ids and weighted edges.
struct TreeStructure {
  std::vector<std::string> vertices;
  std::vector<TreeEdge> edges;
};

/// Validated metric tree with an all-pairs vertex distance table and
/// next-hop routing, both built once by traversal from every vertex.
///
/// Edges are stored oriented from the lower to the higher vertex index
/// (index = position in the vertex list).
class MetricTree {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Edge {
    std::size_t lo;
    std::size_t hi;
    double length;
  };

  explicit MetricTree(TreeStructure structure);

  std::size_t vertex_count() const noexcept { return structure_.vertices.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::string& vertex_id(std::size_t v) const { return structure_.vertices.at(v); }
  std::optional<std::size_t> find_vertex(std::string_view id) const;
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  /// Index of the edge joining two adjacent vertices, npos when not adjacent.
  std::size_t edge_between(std::size_t a, std::size_t b) const;

  double vertex_distance(std::size_t a, std::size_t b) const { return dist_[a * vertex_count() + b]; }
  /// First vertex after `from` on the unique path towards `to`.
  std::size_t next_hop(std::size_t from, std::size_t to) const { return hop_[from * vertex_count() + to]; }
  double total_length() const noexcept { return total_length_; }

  const TreeStructure& structure() const noexcept { return structure_; }

 private:
  TreeStructure structure_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;  // (neighbour, edge)
  std::vector<double> dist_;
  std::vector<std::size_t> hop_;
  double total_length_ = 0.0;
};

/// A position on a metric tree: either a vertex or an interior point of an
/// edge, with the offset measured from the edge's lower-index endpoint.
struct TreePosition {
  static constexpr std::size_t npos = MetricTree::npos;

  std::size_t vertex = npos;
  std::size_t edge = npos;
  double offset = 0.0;

  static TreePosition at_vertex(std::size_t v) { return TreePosition{v, npos, 0.0}; }
  static TreePosition on_edge(std::size_t e, double offset) { return TreePosition{npos, e, offset}; }
  bool is_vertex() const noexcept { return edge == npos; }

  friend bool operator==(const TreePosition&, const TreePosition&) = default;
};

/// One concrete geodesic metric space. Cheap to copy: the tree, if any, is
/// shared and immutable.
class Space {
 public:
  static Space euclidean(std::size_t dim);
  /// Hyperboloid model of curvature kappa < 0; points live in R^{dim+1}.
  static Space hyperbolic(double kappa, std::size_t dim);
  /// Symmetric positive definite p x p matrices, affine-invariant metric.
  static Space spd_affine(std::size_t p);
  /// Sphere of radius 1/sqrt(kappa) in R^{dim+1}.
  static Space sphere(double kappa, std::size_t dim);
  static Space metric_tree(TreeStructure tree);

  SpaceKind kind() const noexcept { return kind_; }
  /// Euclidean/hyperbolic/sphere: intrinsic dimension; SPD: matrix size p;
  /// tree: number of vertices.
  std::size_t dimension() const noexcept { return dim_; }
  /// Sectional curvature; 0 for the kinds that carry none.
  double curvature() const noexcept { return kappa_; }
  /// 1/sqrt(|kappa|) for hyperbolic and sphere, 1 otherwise.
  double radius() const noexcept { return radius_; }
  /// Length of the coordinate vector for vector-valued kinds.
  std::size_t ambient_size() const noexcept;
  bool is_npc() const noexcept { return kind_ != SpaceKind::sphere; }
  const MetricTree& tree() const;

  friend bool operator==(const Space& a, const Space& b);

 private:
  Space(SpaceKind kind, std::size_t dim, double kappa) : kind_(kind), dim_(dim), kappa_(kappa) {}

  SpaceKind kind_;
  std::size_t dim_;
  double kappa_;
  double radius_ = 1.0;
  std::shared_ptr<const MetricTree> tree_;
};

/// A point of some space. The payload type follows the kind: coordinate
/// vector (euclidean, hyperbolic, sphere), matrix (SPD) or tree position.
class Point {
 public:
  using Payload = std::variant<Eigen::VectorXd, Eigen::MatrixXd, TreePosition>;

  static Point vector(SpaceKind kind, Eigen::VectorXd coords);
  static Point matrix(Eigen::MatrixXd m);
  static Point tree(TreePosition pos);

  SpaceKind kind() const noexcept { return kind_; }
  const Payload& payload() const noexcept { return payload_; }
  const Eigen::VectorXd& coords() const;
  const Eigen::MatrixXd& matrix() const;
  const TreePosition& tree_position() const;

  /// Exact payload equality (no tolerance).
  friend bool operator==(const Point& a, const Point& b);

 private:
  Point(SpaceKind kind, Payload payload) : kind_(kind), payload_(std::move(payload)) {}

  SpaceKind kind_;
  Payload payload_;
};

}  // namespace frechet
