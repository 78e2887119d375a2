#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frechet/barycenter.hpp"
#include "frechet/concentration_bounds.hpp"
#include "frechet/space.hpp"

namespace frechet::experiments {

/// Seeded 64-bit stream. The engine is std::mt19937_64; the derived
/// distributions are implemented here so draws are identical on every
/// standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for one trial, keyed by (seed, index) through splitmix64.
  static RandomStream derive(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  /// Uniform on {0, ..., bound - 1}; bound > 0.
  std::uint64_t uniform_int(std::uint64_t bound);
  /// Standard normal (polar Box–Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Random instances -------------------------------------------------------

/// Euclidean: standard normal coordinates. SPD: exp of a symmetric matrix with
/// entries uniform in [-1, 1]. Hyperbolic: exponential at the base point of a
/// tangent vector of norm uniform in [0, 2]. Tree: uniform edge, uniform
/// offset. Sphere: uniform in the cap of radius pi/(4 sqrt(kappa)) around the
/// north pole.
Point random_point(const Space& space, RandomStream& rng);

/// Random tree: vertex i > 0 attaches to a uniform earlier vertex, edge
/// lengths uniform in [0.5, 2]. Vertex ids are "v0", "v1", ...
Space random_tree(RandomStream& rng, std::size_t vertices = 10);

// Distributions ----------------------------------------------------------

struct DistributionSpec {
  Space space;
  WeightedSample sample;
  std::string label;
};

/// Exact categorical sampler over the atoms of a distribution.
class AtomSampler {
 public:
  explicit AtomSampler(const WeightedSample& sample);
  std::size_t draw(RandomStream& rng) const;

 private:
  std::vector<std::uint64_t> cumulative_;
  std::uint64_t total_ = 1;
};

/// Draws one atom of `dist` with probability equal to its weight.
const Point& sample(const DistributionSpec& dist, RandomStream& rng);

/// Throws InvalidInput unless every atom lies in a ball of radius
/// pi/(2 sqrt(kappa)) - epsilon (strictly inside pi/(2 sqrt(kappa)) when
/// epsilon is absent). No-op for other kinds.
void require_sphere_ball(const DistributionSpec& dist, std::optional<double> epsilon = std::nullopt);

/// Weighted barycenter of the full support; sphere inputs are checked
/// against the ball condition first.
BarycenterResult population_barycenter(const DistributionSpec& dist, const SolverOptions& options = {},
                                       std::optional<double> epsilon = std::nullopt);

struct DistributionStats {
  Point barycenter;
  /// sqrt of the Frechet variance at the barycenter.
  double sigma;
  /// Largest distance from the barycenter to an atom.
  double C;
  /// Support diameter.
  double D;
};

DistributionStats distribution_stats(const DistributionSpec& dist, const Point& barycenter);

// Concentration experiments ---------------------------------------------

enum class Estimator { empirical, inductive };
std::string_view to_string(Estimator e);
Estimator parse_estimator(std::string_view s);

enum class ExperimentKind { concentration, sturm_lln, subgaussian_witness, pac };
std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

/// Bound compared against the trial distances. Statistics (sigma, C, n,
/// delta, kappa) are filled in from the distribution; the remaining fields
/// are user inputs.
struct BoundSpec {
  std::string name = "hoeffding_radius";
  bounds::Combine combine = bounds::Combine::max;
  /// Multiplier applied to the evaluated bound (1 for genuine checks).
  double scale = 1.0;
  /// Defaults to 2C for subgaussian_radius.
  std::optional<double> K;
  std::optional<double> A;
  std::optional<double> p;
  std::optional<double> epsilon;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::concentration;
  /// One distribution for i.i.d. sampling, or exactly n for one draw from each.
  std::vector<DistributionSpec> distributions;
  std::size_t n = 1;
  Estimator estimator = Estimator::empirical;
  std::size_t trials = 1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  BoundSpec bound;
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;

  // subgaussian_witness
  std::optional<Point> x0;
  std::vector<double> t_grid;
  /// Draws for the witness check.
  std::size_t draws = 100000;

  // pac
  double eps_target = 0.5;
  bool use_bernstein = false;
  double c_pac = 1.0;
};

/// Throws InvalidInput for an inconsistent configuration.
void validate(const ExperimentConfig& config);

struct TrialReport {
  std::string label;
  std::string bound_name;
  Estimator estimator = Estimator::empirical;
  std::size_t n = 0;
  std::size_t trials = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  /// d(T_n, b*) per trial, in trial order.
  std::vector<double> distances;
  double mean_sq = 0.0;
  /// ceil((1 - delta) trials)-th smallest distance.
  double quantile = 0.0;
  double bound = 0.0;
  double coverage = 0.0;
  /// Coverage needed to pass: 1 - delta - 3 sqrt(delta (1 - delta) / trials).
  double threshold = 0.0;
  bool pass = false;
  /// Empirical estimator on a space without a curvature lower bound: the
  /// bound is not proven there, so a failure is reported but not fatal.
  bool conjectural = false;
  /// Hypothesis the harness assumes without checking, empty if none.
  std::string assumption;
  double sigma = 0.0;
  double C = 0.0;
  double D = 0.0;
  /// Per-distribution values in non-i.i.d. mode.
  std::vector<double> sigmas;
  std::vector<double> Cs;
  double wall_seconds = 0.0;
};

/// Fraction needed to pass a coverage check at level delta.
double coverage_threshold(double delta, std::size_t trials);

/// Order statistic of rank ceil(q * size) (1-based).
double upper_quantile(std::vector<double> values, double q);

TrialReport run_concentration(const ExperimentConfig& config);

struct SturmReport {
  std::string label;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> distances;
  double mean_sq = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::vector<double> sigmas;
  double wall_seconds = 0.0;
};

/// Requires estimator = inductive.
SturmReport verify_sturm_lln(const ExperimentConfig& config);

struct WitnessRow {
  double t;
  double empirical;
  double bound;
  double standard_error;
  bool pass;
};

struct WitnessReport {
  std::string label;
  double C = 0.0;
  /// Exact mean of d(X, x0).
  double mean = 0.0;
  std::size_t draws = 0;
  std::uint64_t seed = 0;
  std::vector<WitnessRow> rows;
  bool pass = false;
};

/// Empirical tails of f = d(., x0) against 2 exp(-t^2 / (8 C^2)), C the
/// largest atom distance to x0. x0 defaults to the population barycenter;
/// an empty grid means {0.2C, 0.4C, ..., 2C}.
WitnessReport verify_subgaussian_witness(const DistributionSpec& dist, const std::optional<Point>& x0,
                                         std::size_t draws, std::vector<double> t_grid, std::uint64_t seed);

struct PacReport {
  std::size_t m = 0;
  bool bernstein = false;
  double eps_target = 0.0;
  double delta = 0.0;
  double c_pac = 1.0;
  double D = 0.0;
  double sigma2 = 0.0;
  Point reference = Point::vector(SpaceKind::euclidean, Eigen::VectorXd());
  std::vector<double> distances;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double success_frequency = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
};

/// Subsampling algorithm: draw m uniform indices, take the inductive
/// barycenter of the subsample, succeed when it lies within eps of the
/// empirical barycenter of the full point set.
PacReport run_pac(const Space& space, const std::vector<Point>& points, double eps_target, double delta,
                  std::size_t trials, bool use_bernstein, double c_pac, std::uint64_t seed,
                  const SolverOptions& options = {}, std::size_t threads = 0);

// Property suite ---------------------------------------------------------

struct SuiteSizes {
  std::size_t triples = 10000;
  std::size_t geodesics = 10000;
  std::size_t lipschitz = 1000;
  std::size_t sandwich = 200;
};

struct CheckResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// Largest amount by which the checked inequality was exceeded (<= 0 when all hold).
  double max_excess = 0.0;
  /// Description of the worst violating instance.
  std::string witness;
};

struct SuiteReport {
  std::string space;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass() const;
};

/// Runs the geometric checks for one space: midpoint inequality, constant
/// speed, (1/n)-Lipschitz barycenter maps (both estimators) and the pairwise
/// variance sandwich. The midpoint and Lipschitz checks are skipped for the
/// sphere.
SuiteReport npc_property_suite(const Space& space, std::uint64_t seed, const SuiteSizes& sizes = {},
                               const std::vector<std::string>& only = {});

CheckResult check_midpoint_inequality(const Space& space, RandomStream& rng, std::size_t count);
CheckResult check_constant_speed(const Space& space, RandomStream& rng, std::size_t count);
CheckResult check_lipschitz(const Space& space, RandomStream& rng, std::size_t count, Estimator estimator);
CheckResult check_variance_sandwich(const Space& space, RandomStream& rng, std::size_t count);

// Shipped instances ------------------------------------------------------

namespace catalog {

/// Space used for a kind by the suites and shipped distributions:
/// R^3, hyperbolic plane kappa = -1, 3x3 SPD, sphere kappa = 1 of dimension 2,
/// and a random 10-vertex tree drawn from `seed`.
Space standard_space(SpaceKind kind, std::uint64_t seed = 0);

/// Two-to-four-atom distributions for the Hoeffding checks (NPC kinds).
DistributionSpec hoeffding_distribution(SpaceKind kind);

/// Distributions with sigma <= 0.1 C (NPC kinds).
DistributionSpec bernstein_distribution(SpaceKind kind);

/// Uniform on {-1, +1} in R.
DistributionSpec rademacher();

/// Two SPD atoms used for the Sturm law of large numbers check.
DistributionSpec spd_two_atom();

/// n distributions on R, the i-th uniform on {-s_i, s_i} with s_i spread in [0.5, 1.5].
std::vector<DistributionSpec> noniid_symmetric(std::size_t n);

/// Two atoms at arc distance 0.6 on the unit sphere, symmetric about the pole.
DistributionSpec sphere_cap();

/// 100 points in R: fifty -1 and fifty +1.
std::vector<Point> pac_instance();

/// 100 points in R: 98 zeros, one -1 and one +1.
std::vector<Point> pac_small_variance_instance();

}  // namespace catalog

}  // namespace frechet::experiments
