#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leadership/core.hpp"
#include "leadership/socgraph.hpp"
#include "leadership/zonal.hpp"

namespace leadership {

struct InformedTruth {
    std::size_t agent{0};
    double omega{0.0};  // static weight; scheduled agents may carry 0 here
    std::optional<Vec2> preferred_direction;
    std::optional<Vec2> goal;

    bool operator==(const InformedTruth&) const = default;
};

/// Agent `agent` is an informed leader on [begin, end).
struct ActiveInterval {
    std::size_t agent{0};
    double begin{0.0};
    double end{0.0};

    bool operator==(const ActiveInterval&) const = default;
};

struct StructuralSegment {
    double begin{0.0};
    double end{0.0};
    std::vector<Edge> edges;

    bool operator==(const StructuralSegment&) const = default;
};

/// Annotations a scenario makes about its own leadership. Always derivable
/// from the RunConfig; see derive_truth.
struct GroundTruth {
    std::vector<StructuralSegment> structure;  // influence graph per S(t) segment
    std::vector<InformedTruth> informed;       // agents with omega > 0 at some time
    std::vector<ActiveInterval> timeline;      // when each informed agent is active
    bool emergent{false};                      // some agent has a blind wedge
    double blind_angle{0.0};                   // widest wedge in the group

    bool operator==(const GroundTruth&) const = default;
};

/// Region of centroid space the group should reach: a disc.
struct TargetRegion {
    Vec2 centre;
    double radius{0.0};

    bool operator==(const TargetRegion&) const = default;
};

struct ScenarioSpec {
    std::string name;
    RunConfig config;
    GroundTruth truth;
    std::vector<std::string> labels;  // optional display names per agent
    std::optional<TargetRegion> target;

    /// Validates the config and checks that `truth` matches derive_truth(config).
    void validate() const;

    bool operator==(const ScenarioSpec&) const = default;
};

GroundTruth derive_truth(const RunConfig& config);

/// Common knobs of the scenario generators.
struct ScenarioOptions {
    std::size_t n_steps{3000};
    std::uint64_t seed{1};
    double dt{0.1};
    double disc_radius{5.0};
    AgentParams params{};
};

/// All-to-all group with no injected leadership.
ScenarioSpec make_flock(std::size_t n, const ScenarioOptions& opts = {});

/// Agent i follows agent i + 1 only; agent n - 1 heads the chain.
ScenarioSpec make_chain(std::size_t n, double alpha, const ScenarioOptions& opts = {});

/// ceil(p n) agents, picked by a draw seeded from opts.seed, get (omega, g).
ScenarioSpec make_informed(std::size_t n, double fraction, double omega, const Vec2& g,
                           const ScenarioOptions& opts = {});

/// Uninformed all-to-all group with a rear blind wedge of width beta.
ScenarioSpec make_emergent(std::size_t n, double beta, const ScenarioOptions& opts = {});

/// Sociality from a shipped fixture, "fig1" or "fig2".
ScenarioSpec make_hierarchy(const std::string& fixture, const ScenarioOptions& opts = {});

/// Agent 0 steers towards `goal` with weight omega; everyone else is social only.
/// The target region is the disc of radius `radius` around the goal.
ScenarioSpec make_shepherd(std::size_t n, double omega, const Vec2& goal, double radius,
                           const ScenarioOptions& opts = {});

struct Schedules {
    std::vector<SocialityMatrix::Segment> sociality;  // empty keeps the base S
    std::vector<InformedSchedule> informed;           // replaces schedules of the same agent
};

/// Base scenario with time-varying S(t), omega(t) and g(t). Intervals must
/// partition the horizon; overlaps throw std::invalid_argument.
ScenarioSpec make_scheduled(const ScenarioSpec& base, const Schedules& schedules);

/// Edge-list text of a shipped fixture and its agent labels.
struct Fixture {
    std::string edges;
    std::vector<std::string> labels;
};
const Fixture& fixture(const std::string& name);

/// Runs the scenario; the dataset's ground_truth points at a copy of `spec`.
TrajectoryDataset simulate(const ScenarioSpec& spec);

}  // namespace leadership
