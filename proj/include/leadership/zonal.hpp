#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "leadership/core.hpp"
#include "leadership/socgraph.hpp"

namespace leadership {

using Rng = std::mt19937_64;

enum class Zone { repulsion, orientation, attraction };

/// Piece of a time-varying informed schedule, active on [begin, end).
struct InformedSegment {
    double begin{0.0};
    double end{0.0};
    double omega{0.0};
    std::optional<Vec2> preferred_direction;  // falls back to the agent's own

    bool operator==(const InformedSegment&) const = default;
};

/// omega(t) and g(t) of one agent. Segments must partition the run horizon.
struct InformedSchedule {
    std::size_t agent{0};
    std::vector<InformedSegment> segments;

    bool operator==(const InformedSchedule&) const = default;
};

struct InitialCondition {
    double disc_radius{5.0};
    // Overrides the random placement when present.
    std::optional<Frame> frame;

    bool operator==(const InitialCondition&) const = default;
};

struct RunConfig {
    std::size_t n_agents{1};
    double dt{0.1};
    std::size_t n_steps{1};
    std::vector<AgentParams> params;
    SocialityMatrix sociality;
    std::uint64_t seed{0};
    InitialCondition initial;
    std::vector<InformedSchedule> informed_schedules;

    double horizon() const { return static_cast<double>(n_steps) * dt; }
    /// Throws std::invalid_argument with a description of the first problem found.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Config with `n` copies of `params` and all-ones sociality.
RunConfig default_config(std::size_t n, std::size_t n_steps, std::uint64_t seed,
                         const AgentParams& params = {});

/// Neighbours of `focal` inside one zone. Orientation and attraction zones
/// exclude the rear blind wedge; repulsion never does.
std::vector<std::size_t> perceive(std::size_t focal, std::span<const AgentState> frame, Zone zone,
                                  const AgentParams& params);

/// -sum of unit offsets towards each neighbour; coincident neighbours add nothing.
Vec2 repulsion_direction(std::size_t focal, std::span<const std::size_t> neighbours,
                         std::span<const AgentState> frame);

/// Sociality-weighted blend of attraction offsets and neighbour headings.
Vec2 social_direction(std::size_t focal, std::span<const std::size_t> orient,
                      std::span<const std::size_t> attract, std::span<const AgentState> frame,
                      std::span<const double> sociality_row, double alpha);

/// (d + omega g) / |d + omega g|, or d when the sum vanishes.
Vec2 informed_blend(const Vec2& d_hat, double omega, const Vec2& g);

/// Rotates d by a wrapped-Gaussian angle with standard deviation sigma.
/// sigma == 0 returns d without touching the stream.
Vec2 perturb_heading(const Vec2& d, double sigma, Rng& rng);

/// Turns `current` towards `desired` by at most `max_angle`; exact reversal
/// turns counterclockwise.
Vec2 rotate_towards(const Vec2& current, const Vec2& desired, double max_angle);

/// One synchronous update of every agent from `frame` at step index `step_index`.
Frame step(std::span<const AgentState> frame, const RunConfig& config, std::size_t step_index, Rng& rng);

/// Initial frame drawn from the config's placement rule.
Frame initial_frame(const RunConfig& config, Rng& rng);

/// Runs n_steps updates. Throws NumericFailure on non-finite state.
TrajectoryDataset simulate(const RunConfig& config);

/// Effective omega and preferred direction of `agent` at `time`. A goal point
/// in the agent's params takes over unless a schedule segment sets the direction.
struct InformedState {
    double omega{0.0};
    std::optional<Vec2> direction;
    bool scheduled_direction{false};
};
InformedState informed_state(const RunConfig& config, std::size_t agent, double time);

}  // namespace leadership
