#include "frechet/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "frechet/errors.hpp"
#include "frechet/geodesic_spaces.hpp"

namespace frechet::io {
namespace {

using experiments::DistributionSpec;
using experiments::ExperimentConfig;

[[noreturn]] void fail(const std::string& msg) { throw InvalidInput(msg); }

void require_object(const json& j, std::string_view ctx) {
  if (!j.is_object()) fail(std::string(ctx) + " must be a JSON object");
}

void allow_keys(const json& j, std::initializer_list<std::string_view> keys, std::string_view ctx) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (std::string_view a : keys) known = known || k == a;
    if (!known) fail("unknown key '" + k + "' in " + std::string(ctx));
  }
}

const json& field(const json& j, const char* key, std::string_view ctx) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(ctx) + " is missing '" + key + "'");
  return *it;
}

double number(const json& j, std::string_view what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, std::string_view what) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::size_t>(j.get<std::int64_t>());
  fail(std::string(what) + " must be a non-negative integer");
}

bool boolean(const json& j, std::string_view what) {
  if (!j.is_boolean()) fail(std::string(what) + " must be true or false");
  return j.get<bool>();
}

std::string text(const json& j, std::string_view what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::uint64_t seed_value(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("seed must be an unsigned 64-bit integer");
    return v;
  }
  return count(j, "seed");
}

std::vector<double> numbers(const json& j, std::string_view what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const json& e : j) out.push_back(number(e, what));
  return out;
}

std::optional<double> opt_number(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return number(*it, key);
}

std::string vertex_name(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  fail("tree vertex ids must be strings or integers");
}

std::size_t vertex_index(const MetricTree& t, const json& j) {
  const std::string id = vertex_name(j);
  auto v = t.find_vertex(id);
  if (!v) fail("unknown tree vertex '" + id + "'");
  return *v;
}

json doubles(const std::vector<double>& v) { return json(v); }


}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path.string() + "'");
  out << content;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

// Spaces and points ------------------------------------------------------

json space_to_json(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::euclidean: return {{"kind", "euclidean"}, {"dim", s.dimension()}};
    case SpaceKind::hyperbolic: return {{"kind", "hyperbolic"}, {"kappa", s.curvature()}, {"dim", s.dimension()}};
    case SpaceKind::spd_affine: return {{"kind", "spd"}, {"p", s.dimension()}};
    case SpaceKind::sphere: return {{"kind", "sphere"}, {"kappa", s.curvature()}, {"dim", s.dimension()}};
    case SpaceKind::metric_tree: {
      const TreeStructure& t = s.tree().structure();
      json edges = json::array();
      for (const TreeEdge& e : t.edges) edges.push_back({e.u, e.v, e.length});
      return {{"kind", "tree"}, {"tree", {{"vertices", t.vertices}, {"edges", edges}}}};
    }
  }
  fail("unknown space kind");
}

Space space_from_json(const json& j) {
  require_object(j, "space");
  const std::string kind = text(field(j, "kind", "space"), "space kind");
  if (kind == "euclidean") {
    allow_keys(j, {"kind", "dim"}, "euclidean space");
    return Space::euclidean(count(field(j, "dim", "euclidean space"), "dim"));
  }
  if (kind == "hyperbolic") {
    allow_keys(j, {"kind", "kappa", "dim"}, "hyperbolic space");
    return Space::hyperbolic(number(field(j, "kappa", "hyperbolic space"), "kappa"),
                             count(field(j, "dim", "hyperbolic space"), "dim"));
  }
  if (kind == "spd" || kind == "spd_affine") {
    allow_keys(j, {"kind", "p"}, "SPD space");
    return Space::spd_affine(count(field(j, "p", "SPD space"), "p"));
  }
  if (kind == "sphere") {
    allow_keys(j, {"kind", "kappa", "dim"}, "sphere");
    return Space::sphere(number(field(j, "kappa", "sphere"), "kappa"), count(field(j, "dim", "sphere"), "dim"));
  }
  if (kind == "tree" || kind == "metric_tree") {
    allow_keys(j, {"kind", "tree"}, "tree space");
    const json& t = field(j, "tree", "tree space");
    require_object(t, "tree");
    allow_keys(t, {"vertices", "edges"}, "tree");
    TreeStructure ts;
    const json& vs = field(t, "vertices", "tree");
    if (!vs.is_array()) fail("tree vertices must be an array");
    for (const json& v : vs) ts.vertices.push_back(vertex_name(v));
    const json& es = field(t, "edges", "tree");
    if (!es.is_array()) fail("tree edges must be an array");
    for (const json& e : es) {
      if (!e.is_array() || e.size() != 3) fail("each tree edge must be [u, v, length]");
      ts.edges.push_back(TreeEdge{vertex_name(e[0]), vertex_name(e[1]), number(e[2], "edge length")});
    }
    return Space::metric_tree(std::move(ts));
  }
  fail("unknown space kind '" + kind + "' (expected euclidean, hyperbolic, spd, sphere or tree)");
}

json payload_to_json(const Space& s, const Point& p) {
  switch (s.kind()) {
    case SpaceKind::euclidean:
    case SpaceKind::hyperbolic:
    case SpaceKind::sphere: {
      const Eigen::VectorXd& v = p.coords();
      return json(std::vector<double>(v.data(), v.data() + v.size()));
    }
    case SpaceKind::spd_affine: {
      const Eigen::MatrixXd& m = p.matrix();
      json rows = json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
      }
      return rows;
    }
    case SpaceKind::metric_tree: {
      const MetricTree& t = s.tree();
      const TreePosition& pos = p.tree_position();
      if (pos.is_vertex()) return {{"vertex", t.vertex_id(pos.vertex)}};
      const auto& e = t.edge(pos.edge);
      return {{"edge", {t.vertex_id(e.lo), t.vertex_id(e.hi)}}, {"offset", pos.offset}};
    }
  }
  fail("unknown space kind");
}

Point payload_from_json(const Space& s, const json& j) {
  Point p = [&]() -> Point {
    switch (s.kind()) {
      case SpaceKind::euclidean:
      case SpaceKind::hyperbolic:
      case SpaceKind::sphere: {
        const std::vector<double> v = numbers(j, "point coordinates");
        return Point::vector(s.kind(), Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
      }
      case SpaceKind::spd_affine: {
        if (!j.is_array() || j.empty()) fail("SPD payload must be a non-empty array of rows");
        const auto rows = static_cast<Eigen::Index>(j.size());
        Eigen::MatrixXd m(rows, rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
          const std::vector<double> r = numbers(j[static_cast<std::size_t>(i)], "SPD row");
          if (static_cast<Eigen::Index>(r.size()) != rows) fail("SPD payload must be a square matrix");
          for (Eigen::Index k = 0; k < rows; ++k) m(i, k) = r[static_cast<std::size_t>(k)];
        }
        return Point::matrix(std::move(m));
      }
      case SpaceKind::metric_tree: {
        require_object(j, "tree position");
        const MetricTree& t = s.tree();
        if (j.contains("vertex")) {
          allow_keys(j, {"vertex"}, "tree position");
          return Point::tree(TreePosition::at_vertex(vertex_index(t, j["vertex"])));
        }
        allow_keys(j, {"edge", "offset"}, "tree position");
        const json& e = field(j, "edge", "tree position");
        if (!e.is_array() || e.size() != 2) fail("tree position edge must be [u, v]");
        const std::size_t u = vertex_index(t, e[0]), v = vertex_index(t, e[1]);
        const std::size_t id = t.edge_between(u, v);
        if (id == MetricTree::npos) fail("no tree edge between '" + t.vertex_id(u) + "' and '" + t.vertex_id(v) + "'");
        const double off = number(field(j, "offset", "tree position"), "offset");
        const double len = t.edge(id).length;
        if (!(off >= 0.0 && off <= len)) fail("tree offset " + format_double(off) + " is outside [0, " + format_double(len) + "]");
        return Point::tree(TreePosition::on_edge(id, t.edge(id).lo == u ? off : len - off));
      }
    }
    fail("unknown space kind");
  }();
  require_valid(s, p);
  return canonical(s, std::move(p));
}

json point_to_json(const Space& s, const Point& p) { return {{"space", space_to_json(s)}, {"payload", payload_to_json(s, p)}}; }

std::pair<Space, Point> point_from_json(const json& j) {
  require_object(j, "point");
  allow_keys(j, {"space", "payload"}, "point");
  Space s = space_from_json(field(j, "space", "point"));
  Point p = payload_from_json(s, field(j, "payload", "point"));
  return {std::move(s), std::move(p)};
}

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  fail("weights must be exact: strings such as \"1/3\" or integers");
}

namespace {

std::vector<Point> payloads(const Space& s, const json& j) {
  if (!j.is_array()) fail("points must be an array");
  std::vector<Point> out;
  for (const json& e : j) out.push_back(payload_from_json(s, e));
  return out;
}

std::optional<std::vector<Rational>> weights_from(const json& j) {
  auto it = j.find("weights");
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) fail("weights must be an array");
  std::vector<Rational> w;
  for (const json& e : *it) w.push_back(rational_from_json(e));
  return w;
}

json weights_to(const std::vector<Rational>& w) {
  json a = json::array();
  for (const Rational& r : w) a.push_back(rational_to_json(r));
  return a;
}

}  // namespace

json points_file_to_json(const PointsFile& f) {
  json pts = json::array();
  for (const Point& p : f.points) pts.push_back(payload_to_json(f.space, p));
  json j = {{"space", space_to_json(f.space)}, {"points", pts}};
  if (f.weights) j["weights"] = weights_to(*f.weights);
  return j;
}

PointsFile points_file_from_json(const json& j) {
  require_object(j, "points file");
  allow_keys(j, {"space", "points", "weights"}, "points file");
  Space s = space_from_json(field(j, "space", "points file"));
  std::vector<Point> pts = payloads(s, field(j, "points", "points file"));
  if (pts.empty()) fail("points file has no points");
  auto w = weights_from(j);
  if (w) WeightedSample(pts, *w);  // validates lengths and sum
  return PointsFile{std::move(s), std::move(pts), std::move(w)};
}

json barycenter_result_to_json(const Space& s, const BarycenterResult& r) {
  return {{"point", point_to_json(s, r.point)},
          {"iterations", r.iterations},
          {"final_displacement", r.final_displacement},
          {"objective", r.objective}};
}

std::pair<Space, BarycenterResult> barycenter_result_from_json(const json& j) {
  require_object(j, "barycenter result");
  allow_keys(j, {"point", "iterations", "final_displacement", "objective"}, "barycenter result");
  auto [s, p] = point_from_json(field(j, "point", "barycenter result"));
  BarycenterResult r{std::move(p), count(field(j, "iterations", "barycenter result"), "iterations"),
                     number(field(j, "final_displacement", "barycenter result"), "final_displacement"),
                     number(field(j, "objective", "barycenter result"), "objective")};
  return {std::move(s), std::move(r)};
}

// Experiments ------------------------------------------------------------

json distribution_to_json(const DistributionSpec& d) {
  json pts = json::array();
  for (const Point& p : d.sample.points()) pts.push_back(payload_to_json(d.space, p));
  return {{"label", d.label}, {"space", space_to_json(d.space)}, {"points", pts}, {"weights", weights_to(d.sample.weights())}};
}

DistributionSpec distribution_from_json(const json& j, const std::optional<Space>& default_space) {
  require_object(j, "distribution");
  allow_keys(j, {"label", "space", "points", "weights"}, "distribution");
  std::optional<Space> s;
  if (j.contains("space")) s = space_from_json(j["space"]);
  else if (default_space) s = *default_space;
  else fail("distribution has no space and the config gives no default");
  std::vector<Point> pts = payloads(*s, field(j, "points", "distribution"));
  if (pts.empty()) fail("distribution has no atoms");
  auto w = weights_from(j);
  WeightedSample sample = w ? WeightedSample(std::move(pts), std::move(*w)) : WeightedSample::uniform(std::move(pts));
  return DistributionSpec{std::move(*s), std::move(sample), j.contains("label") ? text(j["label"], "label") : ""};
}

json experiment_config_to_json(const ExperimentConfig& c) {
  json dists = json::array();
  for (const auto& d : c.distributions) dists.push_back(distribution_to_json(d));
  json bound = {{"name", c.bound.name}, {"combine", bounds::to_string(c.bound.combine)}, {"scale", c.bound.scale}};
  if (c.bound.K) bound["K"] = *c.bound.K;
  if (c.bound.A) bound["A"] = *c.bound.A;
  if (c.bound.p) bound["p"] = *c.bound.p;
  if (c.bound.epsilon) bound["epsilon"] = *c.bound.epsilon;
  json j = {{"kind", experiments::to_string(c.kind)},
            {"distributions", dists},
            {"n", c.n},
            {"estimator", experiments::to_string(c.estimator)},
            {"trials", c.trials},
            {"delta", c.delta},
            {"seed", c.seed},
            {"bound", bound},
            {"threads", c.threads},
            {"t_grid", c.t_grid},
            {"draws", c.draws},
            {"eps_target", c.eps_target},
            {"use_bernstein", c.use_bernstein},
            {"c_pac", c.c_pac}};
  if (c.tol) j["tol"] = *c.tol;
  if (c.x0) j["x0"] = payload_to_json(c.distributions.front().space, *c.x0);
  return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  require_object(j, "experiment config");
  allow_keys(j,
             {"kind", "space", "distribution", "distributions", "n", "estimator", "trials", "delta", "seed", "tol",
              "bound", "threads", "x0", "t_grid", "draws", "eps_target", "use_bernstein", "c_pac"},
             "experiment config");
  ExperimentConfig c;
  if (j.contains("kind")) c.kind = experiments::parse_experiment_kind(text(j["kind"], "kind"));
  if (c.kind == experiments::ExperimentKind::sturm_lln) c.estimator = experiments::Estimator::inductive;

  std::optional<Space> space;
  if (j.contains("space")) space = space_from_json(j["space"]);
  if (j.contains("distribution") == j.contains("distributions"))
    fail("experiment config needs exactly one of 'distribution' or 'distributions'");
  if (j.contains("distribution")) {
    c.distributions.push_back(distribution_from_json(j["distribution"], space));
  } else {
    if (!j["distributions"].is_array()) fail("distributions must be an array");
    for (const json& d : j["distributions"]) c.distributions.push_back(distribution_from_json(d, space));
  }

  if (j.contains("n")) c.n = count(j["n"], "n");
  if (j.contains("estimator")) c.estimator = experiments::parse_estimator(text(j["estimator"], "estimator"));
  if (j.contains("trials")) c.trials = count(j["trials"], "trials");
  if (j.contains("delta")) c.delta = number(j["delta"], "delta");
  if (j.contains("seed")) c.seed = seed_value(j["seed"]);
  c.tol = opt_number(j, "tol");
  if (j.contains("threads")) c.threads = count(j["threads"], "threads");
  if (j.contains("bound")) {
    const json& b = j["bound"];
    require_object(b, "bound");
    allow_keys(b, {"name", "combine", "scale", "K", "A", "p", "epsilon"}, "bound");
    if (b.contains("name")) c.bound.name = text(b["name"], "bound name");
    if (b.contains("combine")) c.bound.combine = bounds::parse_combine(text(b["combine"], "combine"));
    if (b.contains("scale")) c.bound.scale = number(b["scale"], "scale");
    c.bound.K = opt_number(b, "K");
    c.bound.A = opt_number(b, "A");
    c.bound.p = opt_number(b, "p");
    c.bound.epsilon = opt_number(b, "epsilon");
  }
  if (j.contains("x0")) c.x0 = payload_from_json(c.distributions.front().space, j["x0"]);
  if (j.contains("t_grid")) c.t_grid = numbers(j["t_grid"], "t_grid");
  if (j.contains("draws")) c.draws = count(j["draws"], "draws");
  if (j.contains("eps_target")) c.eps_target = number(j["eps_target"], "eps_target");
  if (j.contains("use_bernstein")) c.use_bernstein = boolean(j["use_bernstein"], "use_bernstein");
  if (j.contains("c_pac")) c.c_pac = number(j["c_pac"], "c_pac");
  experiments::validate(c);
  return c;
}

json trial_report_to_json(const experiments::TrialReport& r) {
  return {{"label", r.label},
          {"bound_name", r.bound_name},
          {"estimator", experiments::to_string(r.estimator)},
          {"n", r.n},
          {"trials", r.trials},
          {"delta", r.delta},
          {"seed", r.seed},
          {"distances", doubles(r.distances)},
          {"mean_sq", r.mean_sq},
          {"quantile", r.quantile},
          {"bound", r.bound},
          {"coverage", r.coverage},
          {"threshold", r.threshold},
          {"pass", r.pass},
          {"conjectural", r.conjectural},
          {"assumption", r.assumption},
          {"sigma", r.sigma},
          {"C", r.C},
          {"D", r.D},
          {"sigmas", doubles(r.sigmas)},
          {"Cs", doubles(r.Cs)},
          {"wall_seconds", r.wall_seconds}};
}

experiments::TrialReport trial_report_from_json(const json& j) {
  require_object(j, "trial report");
  constexpr std::string_view ctx = "trial report";
  experiments::TrialReport r;
  r.label = text(field(j, "label", ctx), "label");
  r.bound_name = text(field(j, "bound_name", ctx), "bound_name");
  r.estimator = experiments::parse_estimator(text(field(j, "estimator", ctx), "estimator"));
  r.n = count(field(j, "n", ctx), "n");
  r.trials = count(field(j, "trials", ctx), "trials");
  r.delta = number(field(j, "delta", ctx), "delta");
  r.seed = seed_value(field(j, "seed", ctx));
  r.distances = numbers(field(j, "distances", ctx), "distances");
  r.mean_sq = number(field(j, "mean_sq", ctx), "mean_sq");
  r.quantile = number(field(j, "quantile", ctx), "quantile");
  r.bound = number(field(j, "bound", ctx), "bound");
  r.coverage = number(field(j, "coverage", ctx), "coverage");
  r.threshold = number(field(j, "threshold", ctx), "threshold");
  r.pass = boolean(field(j, "pass", ctx), "pass");
  r.conjectural = boolean(field(j, "conjectural", ctx), "conjectural");
  r.assumption = text(field(j, "assumption", ctx), "assumption");
  r.sigma = number(field(j, "sigma", ctx), "sigma");
  r.C = number(field(j, "C", ctx), "C");
  r.D = number(field(j, "D", ctx), "D");
  r.sigmas = numbers(field(j, "sigmas", ctx), "sigmas");
  r.Cs = numbers(field(j, "Cs", ctx), "Cs");
  r.wall_seconds = number(field(j, "wall_seconds", ctx), "wall_seconds");
  return r;
}

std::string trial_report_csv(const experiments::TrialReport& r) {
  std::string out = "trial,distance,bound,covered\n";
  const std::string bound = format_double(r.bound);
  for (std::size_t i = 0; i < r.distances.size(); ++i)
    out += std::to_string(i) + ',' + format_double(r.distances[i]) + ',' + bound + ',' +
           (r.distances[i] <= r.bound ? "1" : "0") + '\n';
  return out;
}

json sturm_report_to_json(const experiments::SturmReport& r) {
  return {{"label", r.label},       {"n", r.n},
          {"trials", r.trials},     {"seed", r.seed},
          {"distances", r.distances}, {"mean_sq", r.mean_sq},
          {"standard_error", r.standard_error}, {"bound", r.bound},
          {"pass", r.pass},         {"sigmas", r.sigmas},
          {"wall_seconds", r.wall_seconds}};
}

std::string sturm_report_csv(const experiments::SturmReport& r) {
  std::string out = "trial,distance,distance_sq\n";
  for (std::size_t i = 0; i < r.distances.size(); ++i)
    out += std::to_string(i) + ',' + format_double(r.distances[i]) + ',' +
           format_double(r.distances[i] * r.distances[i]) + '\n';
  return out;
}

json witness_report_to_json(const experiments::WitnessReport& r) {
  json rows = json::array();
  for (const auto& w : r.rows)
    rows.push_back({{"t", w.t}, {"empirical", w.empirical}, {"bound", w.bound}, {"standard_error", w.standard_error}, {"pass", w.pass}});
  return {{"label", r.label}, {"C", r.C}, {"mean", r.mean}, {"draws", r.draws}, {"seed", r.seed}, {"rows", rows}, {"pass", r.pass}};
}

std::string witness_report_csv(const experiments::WitnessReport& r) {
  std::string out = "t,empirical,bound,standard_error,pass\n";
  for (const auto& w : r.rows)
    out += format_double(w.t) + ',' + format_double(w.empirical) + ',' + format_double(w.bound) + ',' +
           format_double(w.standard_error) + ',' + (w.pass ? "1" : "0") + '\n';
  return out;
}

json pac_report_to_json(const Space& s, const experiments::PacReport& r) {
  return {{"m", r.m},
          {"bernstein", r.bernstein},
          {"eps_target", r.eps_target},
          {"delta", r.delta},
          {"c_pac", r.c_pac},
          {"D", r.D},
          {"sigma2", r.sigma2},
          {"reference", point_to_json(s, r.reference)},
          {"distances", r.distances},
          {"successes", r.successes},
          {"trials", r.trials},
          {"success_frequency", r.success_frequency},
          {"threshold", r.threshold},
          {"pass", r.pass},
          {"seed", r.seed}};
}

std::string pac_report_csv(const experiments::PacReport& r) {
  std::string out = "trial,distance,success\n";
  for (std::size_t i = 0; i < r.distances.size(); ++i)
    out += std::to_string(i) + ',' + format_double(r.distances[i]) + ',' + (r.distances[i] <= r.eps_target ? "1" : "0") + '\n';
  return out;
}

json suite_report_to_json(const experiments::SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"checked", c.checked}, {"violations", c.violations}, {"max_excess", c.max_excess}, {"witness", c.witness}});
  return {{"space", r.space}, {"seed", r.seed}, {"checks", checks}, {"pass", r.pass()}};
}

// Bounds -----------------------------------------------------------------

std::pair<std::string, bounds::BoundQuery> bound_query_from_json(const json& j) {
  require_object(j, "bound query");
  allow_keys(j,
             {"bound", "sigma", "sigma2", "C", "K", "n", "delta", "sigmas", "Cs", "kappa", "epsilon", "A", "p", "D",
              "eps_target", "t", "c_pac", "combine"},
             "bound query");
  bounds::BoundQuery q;
  const std::string name = text(field(j, "bound", "bound query"), "bound");
  q.sigma = opt_number(j, "sigma");
  q.sigma2 = opt_number(j, "sigma2");
  q.C = opt_number(j, "C");
  q.K = opt_number(j, "K");
  if (j.contains("n")) q.n = count(j["n"], "n");
  q.delta = opt_number(j, "delta");
  if (j.contains("sigmas")) q.sigmas = numbers(j["sigmas"], "sigmas");
  if (j.contains("Cs")) q.Cs = numbers(j["Cs"], "Cs");
  q.kappa = opt_number(j, "kappa");
  q.epsilon = opt_number(j, "epsilon");
  q.A = opt_number(j, "A");
  q.p = opt_number(j, "p");
  q.D = opt_number(j, "D");
  q.eps_target = opt_number(j, "eps_target");
  q.t = opt_number(j, "t");
  if (j.contains("c_pac")) q.c_pac = number(j["c_pac"], "c_pac");
  if (j.contains("combine")) q.combine = bounds::parse_combine(text(j["combine"], "combine"));
  return {name, std::move(q)};
}

json bound_query_to_json(const std::string& name, const bounds::BoundQuery& q) {
  json j = {{"bound", name}, {"c_pac", q.c_pac}, {"combine", bounds::to_string(q.combine)}};
  const auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  put("sigma", q.sigma);
  put("sigma2", q.sigma2);
  put("C", q.C);
  put("K", q.K);
  if (q.n) j["n"] = *q.n;
  put("delta", q.delta);
  if (!q.sigmas.empty()) j["sigmas"] = q.sigmas;
  if (!q.Cs.empty()) j["Cs"] = q.Cs;
  put("kappa", q.kappa);
  put("epsilon", q.epsilon);
  put("A", q.A);
  put("p", q.p);
  put("D", q.D);
  put("eps_target", q.eps_target);
  put("t", q.t);
  return j;
}

json bound_value_to_json(const bounds::BoundValue& v) {
  json j = {{"bound", v.bound}, {"value", v.value}};
  if (v.sample_size) j["sample_size"] = *v.sample_size;
  return j;
}

bounds::BoundValue bound_value_from_json(const json& j) {
  require_object(j, "bound value");
  allow_keys(j, {"bound", "value", "sample_size"}, "bound value");
  bounds::BoundValue v{text(field(j, "bound", "bound value"), "bound"), number(field(j, "value", "bound value"), "value"),
                       std::nullopt};
  if (j.contains("sample_size")) v.sample_size = count(j["sample_size"], "sample_size");
  return v;
}

}  // namespace frechet::io
