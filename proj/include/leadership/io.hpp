#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "leadership/anatomy.hpp"
#include "leadership/core.hpp"
#include "leadership/infodyn.hpp"
#include "leadership/sandbox.hpp"

namespace leadership {

using json = nlohmann::json;

// JSON forms. Readers throw std::invalid_argument naming the JSON path of the
// offending field.

json to_json(const Vec2& v);
json to_json(const AgentParams& p);
json to_json(const DenseMatrix& m);
json to_json(const SocialityMatrix& s);
json to_json(const RunConfig& c);
json to_json(const GroundTruth& t);
json to_json(const ScenarioSpec& s);
json to_json(const InfluenceSettings& s);
json to_json(const InfluenceReport& r);
json to_json(const ObservationModel& m);
json to_json(const LeadershipReport& r);

/// `params` may be one object applied to every agent or a per-agent array;
/// `sociality` may be omitted (all ones), "all_ones", {"dense": rows},
/// {"edge_list": text}, {"n": count, "edges": [[j, i, w], ...]} or
/// {"schedule": [{"begin", "end", matrix...}, ...]}. A spec without "truth"
/// gets the derived one.
ScenarioSpec scenario_from_json(const json& j);
RunConfig run_config_from_json(const json& j, const std::string& path = "");
InfluenceSettings influence_settings_from_json(const json& j);
InfluenceReport influence_report_from_json(const json& j);

/// Parses JSON text; syntax errors are reported as "<source>:<line>:<col>: ...".
json parse_json_text(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);

/// Trajectory CSV: "# dt=<dt>" and "# speeds=<s0;s1;...>" comment lines, then
/// the header t,agent_id,x,y,vx,vy and one row per (frame, agent). All numbers
/// use shortest round-trip text, so write then read is bit-exact.
void write_trajectory_csv(std::ostream& out, const TrajectoryDataset& ds);
TrajectoryDataset read_trajectory_csv(std::istream& in);

/// 64-bit FNV-1a of a canonical JSON dump, as 16 hex digits.
std::string config_hash(const json& j);

struct RunManifest {
    std::string config_hash;
    std::uint64_t seed{0};
    std::string tool_version;
    std::string created;  // UTC, ISO 8601
    std::string input;
    std::string output;
    double dt{0.0};
    std::size_t n_agents{0};
    std::size_t n_frames{0};
};

json to_json(const RunManifest& m);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace leadership
