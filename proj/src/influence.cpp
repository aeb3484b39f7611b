#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leadership/errors.hpp"
#include "leadership/infodyn.hpp"

namespace leadership {

namespace {

double circular_mean(std::span<const double> angles)
{
    Vec2 acc;
    for (const double a : angles) {
        acc += from_angle(a);
    }
    return acc.norm() > 0.0 ? heading_angle(acc) : 0.0;
}

SymbolSeries symbolise_angles(const std::vector<double>& angles, const InfluenceSettings& s)
{
    if (s.binning == Binning::equal_width) {
        return discretize_angles(angles, s.bins);
    }
    // Cut the circle opposite the circular mean, then take rank quantiles.
    const double centre = circular_mean(angles);
    std::vector<double> unwrapped;
    unwrapped.reserve(angles.size());
    for (const double a : angles) {
        unwrapped.push_back(heading_angle(rotated(from_angle(a), -centre)));
    }
    return discretize(unwrapped, s.bins, Binning::equal_count);
}

std::vector<double> centroid_velocity_angles(const TrajectoryDataset& ds)
{
    std::vector<double> out(ds.n_frames(), 0.0);
    for (std::size_t t = 0; t < ds.n_frames(); ++t) {
        const std::size_t a = t == 0 ? 0 : t - 1;
        const std::size_t b = t == 0 ? std::min<std::size_t>(1, ds.n_frames() - 1) : t;
        const Vec2 v = ds.group[b].centroid - ds.group[a].centroid;
        out[t] = v.norm() > 0.0 ? heading_angle(v) : 0.0;
    }
    return out;
}

SymbolSeries conditioning_series(const SymbolisedDataset& data, std::size_t agent, const InfluenceSettings& s)
{
    const std::size_t n = data.agents.size();
    if (s.conditioning == Conditioning::others_mean) {
        return history_series(data.others[agent], s.embedding);
    }
    std::vector<SymbolSeries> parts;
    parts.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (j != agent) {
            parts.push_back(history_series(data.agents[j], s.embedding));
        }
    }
    return combine(parts);
}

}  // namespace

SymbolisedDataset symbolise(const TrajectoryDataset& ds, const InfluenceSettings& settings)
{
    SymbolisedDataset out;
    const std::size_t n = ds.n_agents;
    out.agents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.agents.push_back(symbolise_angles(ds.heading_angles(i), settings));
    }
    out.group = symbolise_angles(settings.group == GroupObservable::mean_heading ? ds.group_heading_angles()
                                                                                 : centroid_velocity_angles(ds),
                                 settings);
    if (n > 1) {
        out.others.reserve(n);
        std::vector<Vec2> total(ds.n_frames());
        for (std::size_t t = 0; t < ds.n_frames(); ++t) {
            for (const auto& a : ds.frames[t]) {
                total[t] += a.heading;
            }
        }
        std::vector<double> angles(ds.n_frames());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < ds.n_frames(); ++t) {
                const Vec2 rest = total[t] - ds.frames[t][i].heading;
                angles[t] = rest.norm() > 1e-12 ? heading_angle(rest) : 0.0;
            }
            out.others.push_back(symbolise_angles(angles, settings));
        }
    }
    return out;
}

double net_influence(const SymbolisedDataset& data, std::size_t agent, const InfluenceSettings& settings,
                     std::size_t source_shift)
{
    const auto& src = data.agents.at(agent);
    const auto x = history_series(source_shift ? circular_shift(src, source_shift) : src, settings.embedding);
    if (data.agents.size() < 2) {
        return mutual_information(x, present_series(data.group, settings.embedding));
    }
    const auto y = present_series(settings.scope == GroupScope::rest ? data.others[agent] : data.group,
                                  settings.embedding);
    const SymbolSeries z[] = {conditioning_series(data, agent, settings)};
    return conditional_mutual_information(x, y, z);
}

double apparent_influence(const SymbolisedDataset& data, std::size_t agent, const InfluenceSettings& settings)
{
    return mutual_information(history_series(data.agents.at(agent), settings.embedding),
                              present_series(data.group, settings.embedding));
}

AgentInfluence agent_influence(const SymbolisedDataset& data, std::size_t agent, const InfluenceSettings& settings)
{
    AgentInfluence a;
    a.apparent_bits = apparent_influence(data, agent, settings);
    a.net_bits = net_influence(data, agent, settings);
    std::vector<double> null;
    for (const auto offset : surrogate_offsets(data.group.size(), settings.surrogate, agent + 1)) {
        null.push_back(net_influence(data, agent, settings, offset));
    }
    a.net_null_threshold = null.empty() ? 0.0 : quantile(null, settings.surrogate.quantile);
    a.net_significant = !null.empty() && a.net_bits > a.net_null_threshold;
    return a;
}

InfluenceReport influence_scores(const TrajectoryDataset& ds, const InfluenceSettings& settings)
{
    if (settings.bins < 2) {
        throw std::invalid_argument("bins must be >= 2");
    }
    if (ds.n_frames() < 2) {
        throw InsufficientData("dataset needs at least two frames");
    }
    settings.embedding.validate(ds.n_frames());
    const std::size_t n = ds.n_agents;

    InfluenceReport r;
    r.settings = settings;
    r.n_agents = n;
    r.agent_ids = ds.agent_ids;
    r.samples = ds.n_frames() - settings.embedding.span();
    const auto data = symbolise(ds, settings);

    const double log_bins = std::log2(static_cast<double>(settings.bins));
    const double hist_bits = log_bins * static_cast<double>(settings.embedding.history);
    const double cond_bits =
        n < 2 ? 0.0
              : (settings.conditioning == Conditioning::all_agents ? static_cast<double>(n - 1) * hist_bits : hist_bits);
    const auto samples = static_cast<double>(r.samples);
    const double budget = samples > 1.0 ? std::log2(samples * std::log2(samples)) : 0.0;
    r.sparse_data_warning = hist_bits + log_bins + cond_bits > budget;

    r.agents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.agents.push_back(agent_influence(data, i, settings));
    }

    r.te.assign(n, std::vector<double>(n, 0.0));
    r.te_threshold.assign(n, std::vector<double>(n, 0.0));
    if (settings.pairwise_te && n > 1) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                if (i == j) {
                    continue;
                }
                const auto& src = data.agents[j];
                const auto& tgt = data.agents[i];
                r.te[j][i] = transfer_entropy(src, tgt, settings.embedding);
                std::vector<double> null;
                for (const auto offset : surrogate_offsets(src.size(), settings.surrogate, 1000003 * (j + 1) + i)) {
                    null.push_back(transfer_entropy(circular_shift(src, offset), tgt, settings.embedding));
                }
                // Without surrogates there is no null to beat, so no edge is inferred.
                r.te_threshold[j][i] = null.empty() ? 0.0 : quantile(null, settings.surrogate.quantile);
                if (!null.empty() && r.te[j][i] > r.te_threshold[j][i]) {
                    r.inferred_edges.push_back({j, i, r.te[j][i]});
                }
            }
        }
    }
    return r;
}

}  // namespace leadership
