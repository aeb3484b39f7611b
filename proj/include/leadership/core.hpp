#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "leadership/vec2.hpp"

namespace leadership {

struct ScenarioSpec;

struct AgentState {
    Vec2 position;
    Vec2 heading{1.0, 0.0};  // unit
    double speed{1.0};

    bool operator==(const AgentState&) const = default;
};

/// Per-agent parameter vector. Radii in length units, angles in radians.
struct AgentParams {
    double speed{1.0};
    double r_repulsion{1.0};
    double r_orientation{6.0};
    double r_attraction{14.0};
    double blind_angle{0.0};  // total width of the rear wedge
    double alpha{0.5};        // attraction weight; 1 - alpha goes to orientation
    double omega{0.0};        // weight of the preferred direction
    std::optional<Vec2> preferred_direction;
    // When set, the preferred direction is re-aimed at this point every step.
    std::optional<Vec2> goal;
    double noise_sigma{0.05};
    double max_turn{2.0};  // radians per unit time

    /// Throws std::invalid_argument when the parameter vector is inconsistent.
    void validate() const;

    bool operator==(const AgentParams&) const = default;
};

struct GroupState {
    Vec2 centroid;
    double polarization{0.0};
    std::optional<Vec2> mean_heading;  // absent when polarization < 1e-9

    bool operator==(const GroupState&) const = default;
};

using Frame = std::vector<AgentState>;

struct TrajectoryDataset {
    double dt{0.1};
    std::size_t n_agents{0};
    std::vector<Frame> frames;
    std::vector<GroupState> group;
    std::shared_ptr<const ScenarioSpec> ground_truth;
    // Index of each column in the generating run; identity for intrinsic data.
    std::vector<std::size_t> agent_ids;
    // Set once the data went through an observation model; ground_truth then
    // describes intrinsic variables only.
    bool observed{false};

    std::size_t n_frames() const { return frames.size(); }

    /// Checks frame counts, agent counts and group recomputation.
    void validate() const;

    /// Heading angles of one agent over time.
    std::vector<double> heading_angles(std::size_t agent) const;
    /// Mean-heading angle of the group over time (0 when undefined).
    std::vector<double> group_heading_angles() const;
};

inline constexpr double kPolarizationFloor = 1e-9;

/// Mean position, polarization and mean heading of one frame.
GroupState group_state(std::span<const AgentState> frame);

/// Angle in [0, pi] between two unit vectors.
double angle_between(const Vec2& a, const Vec2& b);

/// Assembles a dataset from frames, computing group states.
TrajectoryDataset make_dataset(double dt, std::vector<Frame> frames);

}  // namespace leadership
