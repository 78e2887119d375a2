#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frechet/barycenter.hpp"
#include "frechet/concentration_bounds.hpp"
#include "frechet/experiments.hpp"
#include "frechet/space.hpp"

// JSON schemas
//
// space:   {"kind": "euclidean", "dim": d}
//          {"kind": "hyperbolic", "kappa": k, "dim": d}     (k < 0, points in R^{d+1})
//          {"kind": "spd", "p": p}
//          {"kind": "sphere", "kappa": k, "dim": d}         (k > 0, points in R^{d+1})
//          {"kind": "tree", "tree": {"vertices": [...], "edges": [[u, v, length], ...]}}
// payload: coordinate array; SPD matrices as row-major nested arrays; tree
//          positions as {"vertex": id} or {"edge": [u, v], "offset": o} with o
//          measured from u.
// point:   {"space": space, "payload": payload}
// points:  {"space": space, "points": [payload, ...], "weights": ["1/3", ...]}
//          Weights are exact: strings "p/q" or integers. Omitted means uniform.
namespace frechet::io {

using nlohmann::json;

/// Parses a file; malformed JSON becomes InvalidInput.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Shortest text with 17 significant digits and '.' as decimal separator.
std::string format_double(double v);

json space_to_json(const Space& space);
Space space_from_json(const json& j);

json payload_to_json(const Space& space, const Point& p);
/// Validates the point against the space.
Point payload_from_json(const Space& space, const json& j);

json point_to_json(const Space& space, const Point& p);
std::pair<Space, Point> point_from_json(const json& j);

struct PointsFile {
  Space space;
  std::vector<Point> points;
  std::optional<std::vector<Rational>> weights;
};
json points_file_to_json(const PointsFile& f);
PointsFile points_file_from_json(const json& j);

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json barycenter_result_to_json(const Space& space, const BarycenterResult& r);
std::pair<Space, BarycenterResult> barycenter_result_from_json(const json& j);

/// {"label": ..., "space": ..., "points": [...], "weights": [...]}; the space
/// may be omitted when a default is given.
json distribution_to_json(const experiments::DistributionSpec& d);
experiments::DistributionSpec distribution_from_json(const json& j, const std::optional<Space>& default_space);

json experiment_config_to_json(const experiments::ExperimentConfig& c);
experiments::ExperimentConfig experiment_config_from_json(const json& j);

json trial_report_to_json(const experiments::TrialReport& r);
experiments::TrialReport trial_report_from_json(const json& j);
/// One row per trial: trial,distance,bound,covered.
std::string trial_report_csv(const experiments::TrialReport& r);

json sturm_report_to_json(const experiments::SturmReport& r);
/// One row per trial: trial,distance,distance_sq.
std::string sturm_report_csv(const experiments::SturmReport& r);
json witness_report_to_json(const experiments::WitnessReport& r);
std::string witness_report_csv(const experiments::WitnessReport& r);
json pac_report_to_json(const Space& space, const experiments::PacReport& r);
std::string pac_report_csv(const experiments::PacReport& r);
json suite_report_to_json(const experiments::SuiteReport& r);

/// {"bound": name, ...fields}; returns the name and the query.
std::pair<std::string, bounds::BoundQuery> bound_query_from_json(const json& j);
json bound_query_to_json(const std::string& name, const bounds::BoundQuery& q);
json bound_value_to_json(const bounds::BoundValue& v);
bounds::BoundValue bound_value_from_json(const json& j);

}  // namespace frechet::io
