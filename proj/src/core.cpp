#include "leadership/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "leadership/errors.hpp"

namespace leadership {

void AgentParams::validate() const
{
    if (!(speed >= 0.0) || !std::isfinite(speed)) {
        throw std::invalid_argument("speed must be finite and >= 0");
    }
    if (!(r_repulsion > 0.0 && r_repulsion < r_orientation && r_orientation < r_attraction)) {
        throw std::invalid_argument("zone radii must satisfy 0 < r_rep < r_orient < r_attr");
    }
    if (!(blind_angle >= 0.0 && blind_angle < 2.0 * std::numbers::pi)) {
        throw std::invalid_argument("blind_angle must lie in [0, 2*pi)");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("omega must be finite and >= 0");
    }
    if (omega > 0.0 && !preferred_direction && !goal) {
        throw std::invalid_argument("omega > 0 requires a preferred direction or goal");
    }
    if (preferred_direction && !is_unit(*preferred_direction)) {
        throw std::invalid_argument("preferred direction must be a unit vector");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw std::invalid_argument("noise_sigma must be finite and >= 0");
    }
    if (!(max_turn >= 0.0)) {
        throw std::invalid_argument("max_turn must be >= 0");
    }
}

GroupState group_state(std::span<const AgentState> frame)
{
    if (frame.empty()) {
        throw std::invalid_argument("empty group");
    }
    Vec2 pos_sum;
    Vec2 head_sum;
    for (const auto& a : frame) {
        pos_sum += a.position;
        head_sum += a.heading;
    }
    const auto n = static_cast<double>(frame.size());
    GroupState g;
    g.centroid = pos_sum / n;
    const double len = head_sum.norm();
    g.polarization = std::min(1.0, len / n);
    if (g.polarization > kPolarizationFloor) {
        g.mean_heading = head_sum / len;
    }
    return g;
}

double angle_between(const Vec2& a, const Vec2& b)
{
    if (!is_unit(a) || !is_unit(b)) {
        throw std::invalid_argument("angle_between expects unit vectors");
    }
    return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

TrajectoryDataset make_dataset(double dt, std::vector<Frame> frames)
{
    TrajectoryDataset ds;
    ds.dt = dt;
    ds.n_agents = frames.empty() ? 0 : frames.front().size();
    ds.group.reserve(frames.size());
    for (const auto& f : frames) {
        ds.group.push_back(group_state(f));
    }
    ds.frames = std::move(frames);
    ds.agent_ids.resize(ds.n_agents);
    for (std::size_t i = 0; i < ds.n_agents; ++i) {
        ds.agent_ids[i] = i;
    }
    return ds;
}

void TrajectoryDataset::validate() const
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dataset dt must be > 0");
    }
    if (n_agents < 1) {
        throw std::invalid_argument("dataset needs at least one agent");
    }
    if (frames.size() < 2) {
        throw InsufficientData("dataset needs at least two frames");
    }
    if (group.size() != frames.size()) {
        throw InputMismatch("group series length differs from frame count");
    }
    if (agent_ids.size() != n_agents) {
        throw InputMismatch("agent id list length differs from agent count");
    }
    for (std::size_t t = 0; t < frames.size(); ++t) {
        if (frames[t].size() != n_agents) {
            throw InputMismatch("frame " + std::to_string(t) + " has a different agent count");
        }
        if (!(group_state(frames[t]) == group[t])) {
            throw InputMismatch("group state at frame " + std::to_string(t) +
                                " is not reproducible from agent states");
        }
    }
}

std::vector<double> TrajectoryDataset::heading_angles(std::size_t agent) const
{
    if (agent >= n_agents) {
        throw std::out_of_range("agent index out of range");
    }
    std::vector<double> out;
    out.reserve(frames.size());
    for (const auto& f : frames) {
        out.push_back(heading_angle(f[agent].heading));
    }
    return out;
}

std::vector<double> TrajectoryDataset::group_heading_angles() const
{
    std::vector<double> out;
    out.reserve(group.size());
    for (const auto& g : group) {
        out.push_back(g.mean_heading ? heading_angle(*g.mean_heading) : 0.0);
    }
    return out;
}

}  // namespace leadership
