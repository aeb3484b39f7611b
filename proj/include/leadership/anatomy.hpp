#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leadership/core.hpp"
#include "leadership/infodyn.hpp"
#include "leadership/sandbox.hpp"

namespace leadership {

/// How the observer sees the intrinsic data.
struct ObservationModel {
    double position_noise_sigma{0.0};
    double heading_noise_sigma{0.0};  // radians, wrapped Gaussian
    std::size_t stride{1};            // keep frames 0, k, 2k, ...
    std::vector<std::size_t> hidden;  // agent ids never observed

    bool identity() const { return position_noise_sigma == 0.0 && heading_noise_sigma == 0.0 && stride == 1 &&
                                   hidden.empty(); }
    void validate() const;

    bool operator==(const ObservationModel&) const = default;
};

/// Observed copy of `ds`. Draw order: per kept frame, per kept agent,
/// position x, position y, heading angle; zero sigmas draw nothing.
/// The result is flagged `observed`; its ground truth still describes the
/// intrinsic run.
TrajectoryDataset observe(const TrajectoryDataset& ds, const ObservationModel& model, std::uint64_t seed);

/// Settings of the default leader test: net influence on the rest of the
/// group beyond the 95th percentile of a circular-shift null.
InfluenceSettings leader_test_settings();

/// Thresholded net-influence predicate on one agent.
bool leader_test(const TrajectoryDataset& ds, std::size_t agent, const InfluenceSettings& settings);

/// Normalised entropy of the score distribution; nullopt when every score is
/// zero ("no detected influence").
std::optional<double> distribution_index(std::span<const double> scores);

struct TemporalThresholds {
    double persistent{1.0};  // fraction at or above: persistent
    double ephemeral{0.2};   // fraction below: ephemeral

    bool operator==(const TemporalThresholds&) const = default;
};

struct ConsistencyResult {
    double fraction{0.0};
    std::vector<std::size_t> window_starts;  // frame index of each window
    std::vector<bool> detected;
    std::string label;  // persistent, intermittent or ephemeral
};

/// Frames [start, start + count) as a dataset; agent ids and truth carried over.
TrajectoryDataset slice(const TrajectoryDataset& ds, std::size_t start, std::size_t count);
/// Frames 0, k, 2k, ..., at most `budget` of them when budget > 0.
TrajectoryDataset downsample(const TrajectoryDataset& ds, std::size_t k, std::size_t budget = 0);

/// Fraction of windows [s, s + window) with s = 0, stride, ... in which the
/// agent passes the leader test. Throws InsufficientData when the window is
/// too short for the embedding.
ConsistencyResult consistency(const TrajectoryDataset& ds, std::size_t agent, std::size_t window,
                              std::size_t stride, const InfluenceSettings& settings,
                              const TemporalThresholds& thresholds = {});

std::string temporal_label(double fraction, const TemporalThresholds& thresholds = {});

struct GranularityPoint {
    std::size_t k{1};
    std::size_t samples{0};
    double net_bits{0.0};
    double threshold{0.0};
    bool detected{false};
};

/// Leader test after downsampling by each k. `budget` caps the number of
/// frames used at every k (0 uses all of them), so coarse strides cover a
/// longer stretch of time with the same sample count. Strides too coarse for
/// the embedding report not detected.
std::vector<GranularityPoint> granularity_sweep(const TrajectoryDataset& ds, std::size_t agent,
                                                std::span<const std::size_t> k_values,
                                                const InfluenceSettings& settings, std::size_t budget = 0);

struct TargetDrivenResult {
    AgentInfluence influence;
    double final_distance{0.0};
    double first_quarter_mean{0.0};
    double final_quarter_mean{0.0};
    bool influential{false};  // net influence beyond its null
    bool converged{false};    // distance at the horizon below epsilon
    bool trending{false};     // final quarter mean below first quarter mean
    bool passed{false};
};

/// Distance from a centroid to the region (0 inside).
double distance_to(const TargetRegion& region, const Vec2& p);

/// Finite-horizon check that `agent` both influences the group and drives its
/// centroid into `region`. `horizon` is a frame index.
TargetDrivenResult target_driven_test(const TrajectoryDataset& ds, std::size_t agent, const TargetRegion& region,
                                      double epsilon, std::size_t horizon, const InfluenceSettings& settings);

/// Leader on intrinsic data but not on observed data. Agents missing from the
/// observed report count as hidden when they lead intrinsically. Throws
/// std::invalid_argument when the reports used different settings.
bool hidden_leader_flag(const InfluenceReport& intrinsic, const InfluenceReport& observed, std::size_t agent);

struct ClassifyOptions {
    std::size_t window{500};
    std::size_t window_stride{500};
    std::vector<std::size_t> k_values{1, 5, 10, 50};
    std::size_t budget{0};
    TemporalThresholds thresholds{};
    ObservationModel observation{};
    std::uint64_t observation_seed{1};
};

struct AgentLeadership {
    std::size_t agent_id{0};
    double net_bits{0.0};
    double apparent_bits{0.0};
    bool net_significant{false};
    double inferred_reach{0.0};                 // reach in the TE-inferred graph
    std::optional<double> structural_reach;     // reach in the ground-truth S graph
    std::optional<ConsistencyResult> consistency;  // absent when windows do not fit
    std::vector<GranularityPoint> granularity;
    bool hidden_flag{false};
};

struct LeadershipReport {
    InfluenceSettings settings;
    ClassifyOptions options;
    std::vector<AgentLeadership> agents;
    std::optional<double> distribution_index;
    std::string distribution_note;  // "no detected influence" when undefined
};

/// Full anatomy of an influence report on its dataset. Throws InputMismatch
/// when the report does not describe the dataset.
LeadershipReport classify(const TrajectoryDataset& ds, const InfluenceReport& report, const ClassifyOptions& options);

}  // namespace leadership
