#include "leadership/anatomy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "leadership/errors.hpp"
#include "leadership/zonal.hpp"

namespace leadership {

void ObservationModel::validate() const
{
    if (!(position_noise_sigma >= 0.0) || !(heading_noise_sigma >= 0.0)) {
        throw std::invalid_argument("observation noise must be >= 0");
    }
    if (stride < 1) {
        throw std::invalid_argument("observation stride must be >= 1");
    }
}

TrajectoryDataset observe(const TrajectoryDataset& ds, const ObservationModel& model, std::uint64_t seed)
{
    model.validate();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ds.n_agents; ++i) {
        const std::size_t id = ds.agent_ids.empty() ? i : ds.agent_ids[i];
        if (std::find(model.hidden.begin(), model.hidden.end(), id) == model.hidden.end()) {
            keep.push_back(i);
        }
    }
    for (const auto h : model.hidden) {
        if (std::find(ds.agent_ids.begin(), ds.agent_ids.end(), h) == ds.agent_ids.end()) {
            throw std::invalid_argument("hidden agent " + std::to_string(h) + " is not in the dataset");
        }
    }
    if (keep.empty()) {
        throw std::invalid_argument("observation model hides every agent");
    }
    if (model.identity()) {
        TrajectoryDataset out = ds;
        out.observed = true;
        return out;
    }

    Rng rng(seed);
    std::normal_distribution<double> pos(0.0, model.position_noise_sigma);
    std::normal_distribution<double> ang(0.0, model.heading_noise_sigma);
    std::vector<Frame> frames;
    for (std::size_t t = 0; t < ds.n_frames(); t += model.stride) {
        Frame f;
        f.reserve(keep.size());
        for (const auto i : keep) {
            AgentState a = ds.frames[t][i];
            if (model.position_noise_sigma > 0.0) {
                a.position.x += pos(rng);
                a.position.y += pos(rng);
            }
            if (model.heading_noise_sigma > 0.0) {
                const Vec2 h = rotated(a.heading, ang(rng));
                a.heading = h / h.norm();
            }
            f.push_back(a);
        }
        frames.push_back(std::move(f));
    }
    if (frames.size() < 2) {
        throw InsufficientData("observation stride leaves fewer than two frames");
    }
    TrajectoryDataset out = make_dataset(ds.dt * static_cast<double>(model.stride), std::move(frames));
    out.agent_ids.clear();
    for (const auto i : keep) {
        out.agent_ids.push_back(ds.agent_ids[i]);
    }
    out.ground_truth = ds.ground_truth;
    out.observed = true;
    return out;
}

InfluenceSettings leader_test_settings()
{
    InfluenceSettings s;
    s.embedding = {3, 1};
    s.bins = 6;
    s.binning = Binning::equal_count;
    s.scope = GroupScope::rest;
    s.conditioning = Conditioning::others_mean;
    s.pairwise_te = false;
    return s;
}

bool leader_test(const TrajectoryDataset& ds, std::size_t agent, const InfluenceSettings& settings)
{
    settings.embedding.validate(ds.n_frames());
    return agent_influence(symbolise(ds, settings), agent, settings).net_significant;
}

std::optional<double> distribution_index(std::span<const double> scores)
{
    double total = 0.0;
    for (const double s : scores) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("influence scores must be finite and >= 0");
        }
        total += s;
    }
    if (total <= 0.0) {
        return std::nullopt;
    }
    if (scores.size() < 2) {
        return 0.0;
    }
    double h = 0.0;
    for (const double s : scores) {
        if (s > 0.0) {
            const double p = s / total;
            h -= p * std::log2(p);
        }
    }
    return std::clamp(h / std::log2(static_cast<double>(scores.size())), 0.0, 1.0);
}

std::string temporal_label(double fraction, const TemporalThresholds& thresholds)
{
    if (fraction >= thresholds.persistent) {
        return "persistent";
    }
    if (fraction < thresholds.ephemeral) {
        return "ephemeral";
    }
    return "intermittent";
}

TrajectoryDataset slice(const TrajectoryDataset& ds, std::size_t start, std::size_t count)
{
    if (start + count > ds.n_frames()) {
        throw std::invalid_argument("slice runs past the end of the dataset");
    }
    TrajectoryDataset out = ds;
    out.frames.assign(ds.frames.begin() + static_cast<std::ptrdiff_t>(start),
                      ds.frames.begin() + static_cast<std::ptrdiff_t>(start + count));
    out.group.assign(ds.group.begin() + static_cast<std::ptrdiff_t>(start),
                     ds.group.begin() + static_cast<std::ptrdiff_t>(start + count));
    return out;
}

TrajectoryDataset downsample(const TrajectoryDataset& ds, std::size_t k, std::size_t budget)
{
    if (k < 1) {
        throw std::invalid_argument("stride must be >= 1");
    }
    TrajectoryDataset out = ds;
    out.frames.clear();
    out.group.clear();
    for (std::size_t t = 0; t < ds.n_frames() && (budget == 0 || out.frames.size() < budget); t += k) {
        out.frames.push_back(ds.frames[t]);
        out.group.push_back(ds.group[t]);
    }
    out.dt = ds.dt * static_cast<double>(k);
    return out;
}

ConsistencyResult consistency(const TrajectoryDataset& ds, std::size_t agent, std::size_t window,
                              std::size_t stride, const InfluenceSettings& settings,
                              const TemporalThresholds& thresholds)
{
    if (stride < 1) {
        throw std::invalid_argument("window stride must be >= 1");
    }
    if (window > ds.n_frames()) {
        throw std::invalid_argument("window longer than the dataset");
    }
    settings.embedding.validate(window);
    ConsistencyResult r;
    std::size_t hits = 0;
    for (std::size_t s = 0; s + window <= ds.n_frames(); s += stride) {
        const bool d = leader_test(slice(ds, s, window), agent, settings);
        r.window_starts.push_back(s);
        r.detected.push_back(d);
        hits += d ? 1 : 0;
    }
    r.fraction = static_cast<double>(hits) / static_cast<double>(r.detected.size());
    r.label = temporal_label(r.fraction, thresholds);
    return r;
}

std::vector<GranularityPoint> granularity_sweep(const TrajectoryDataset& ds, std::size_t agent,
                                                std::span<const std::size_t> k_values,
                                                const InfluenceSettings& settings, std::size_t budget)
{
    std::vector<GranularityPoint> out;
    for (const auto k : k_values) {
        GranularityPoint p;
        p.k = k;
        const auto sub = downsample(ds, k, budget);
        p.samples = sub.n_frames();
        if (p.samples > settings.embedding.span() + 1) {
            const auto a = agent_influence(symbolise(sub, settings), agent, settings);
            p.net_bits = a.net_bits;
            p.threshold = a.net_null_threshold;
            p.detected = a.net_significant;
        }
        out.push_back(p);
    }
    return out;
}

double distance_to(const TargetRegion& region, const Vec2& p)
{
    return std::max(0.0, (p - region.centre).norm() - region.radius);
}

TargetDrivenResult target_driven_test(const TrajectoryDataset& ds, std::size_t agent, const TargetRegion& region,
                                      double epsilon, std::size_t horizon, const InfluenceSettings& settings)
{
    if (horizon >= ds.n_frames()) {
        throw std::invalid_argument("horizon beyond the dataset");
    }
    const auto window = slice(ds, 0, horizon + 1);
    TargetDrivenResult r;
    if (window.n_frames() > settings.embedding.span() + 1) {
        r.influence = agent_influence(symbolise(window, settings), agent, settings);
    }
    r.influential = r.influence.net_significant;

    std::vector<double> d;
    for (const auto& g : window.group) {
        d.push_back(distance_to(region, g.centroid));
    }
    const std::size_t q = std::max<std::size_t>(1, d.size() / 4);
    for (std::size_t t = 0; t < q; ++t) {
        r.first_quarter_mean += d[t] / static_cast<double>(q);
        r.final_quarter_mean += d[d.size() - q + t] / static_cast<double>(q);
    }
    r.final_distance = d.back();
    r.converged = r.final_distance < epsilon;
    r.trending = r.final_quarter_mean < r.first_quarter_mean;
    r.passed = r.influential && r.converged && r.trending;
    return r;
}

bool hidden_leader_flag(const InfluenceReport& intrinsic, const InfluenceReport& observed, std::size_t agent)
{
    if (!(intrinsic.settings == observed.settings)) {
        throw std::invalid_argument("hidden-leader comparison needs identical estimator settings");
    }
    const auto column = [](const InfluenceReport& r, std::size_t id) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < r.agents.size(); ++k) {
            if ((r.agent_ids.empty() ? k : r.agent_ids[k]) == id) {
                return k;
            }
        }
        return std::nullopt;
    };
    const auto in = column(intrinsic, agent);
    if (!in) {
        throw std::invalid_argument("agent " + std::to_string(agent) + " is not in the intrinsic report");
    }
    if (!intrinsic.agents[*in].net_significant) {
        return false;
    }
    const auto out = column(observed, agent);
    return !out || !observed.agents[*out].net_significant;
}

LeadershipReport classify(const TrajectoryDataset& ds, const InfluenceReport& report, const ClassifyOptions& options)
{
    if (report.n_agents != ds.n_agents || report.agents.size() != ds.n_agents) {
        throw InputMismatch("influence report describes " + std::to_string(report.n_agents) +
                            " agents, trajectory has " + std::to_string(ds.n_agents));
    }
    if (!report.agent_ids.empty() && report.agent_ids != ds.agent_ids) {
        throw InputMismatch("influence report and trajectory list different agent ids");
    }
    LeadershipReport out;
    out.settings = report.settings;
    out.options = options;

    std::vector<double> scores;
    for (const auto& a : report.agents) {
        scores.push_back(std::max(0.0, a.net_bits));
    }
    out.distribution_index = distribution_index(scores);
    if (!out.distribution_index) {
        out.distribution_note = "no detected influence";
    }

    const auto inferred = InfluenceGraph::from_edges(ds.n_agents, report.inferred_edges);
    std::optional<InfluenceGraph> structural;
    if (ds.ground_truth && !ds.ground_truth->truth.structure.empty() &&
        ds.ground_truth->config.n_agents == ds.n_agents && !ds.observed) {
        structural = InfluenceGraph::from_edges(ds.n_agents, ds.ground_truth->truth.structure.front().edges);
    }

    // The identity model reproduces the data exactly, so nothing can be hidden.
    // Pairwise TE plays no part in the flag and is skipped on the observed side.
    std::optional<InfluenceReport> seen;
    auto intrinsic = report;
    intrinsic.settings.pairwise_te = false;
    if (!options.observation.identity()) {
        seen = influence_scores(observe(ds, options.observation, options.observation_seed), intrinsic.settings);
    }

    for (std::size_t i = 0; i < ds.n_agents; ++i) {
        AgentLeadership a;
        a.agent_id = ds.agent_ids[i];
        a.net_bits = report.agents[i].net_bits;
        a.apparent_bits = report.agents[i].apparent_bits;
        a.net_significant = report.agents[i].net_significant;
        a.inferred_reach = ds.n_agents > 1 ? reach_score(inferred, i) : 0.0;
        if (structural && ds.n_agents > 1) {
            a.structural_reach = reach_score(*structural, i);
        }
        if (options.window <= ds.n_frames() && options.window > report.settings.embedding.span() + 1) {
            a.consistency = consistency(ds, i, options.window, options.window_stride, report.settings,
                                        options.thresholds);
        }
        a.granularity = granularity_sweep(ds, i, options.k_values, report.settings, options.budget);
        if (seen) {
            a.hidden_flag = hidden_leader_flag(intrinsic, *seen, a.agent_id);
        }
        out.agents.push_back(std::move(a));
    }
    return out;
}

}  // namespace leadership
