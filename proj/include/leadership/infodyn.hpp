#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "leadership/core.hpp"
#include "leadership/socgraph.hpp"

namespace leadership {

/// Discrete time series with symbols in [0, alphabet).
struct SymbolSeries {
    std::size_t alphabet{0};
    std::vector<std::uint32_t> symbols;

    std::size_t size() const { return symbols.size(); }
    void validate() const;

    bool operator==(const SymbolSeries&) const = default;
};

/// Lag tau and history length L, both in steps. History at t is
/// (x[t - tau], x[t - 2 tau], ..., x[t - L tau]).
struct EmbeddingSpec {
    std::size_t lag{1};
    std::size_t history{1};

    std::size_t span() const { return lag * history; }
    void validate(std::size_t series_length) const;

    bool operator==(const EmbeddingSpec&) const = default;
};

enum class Binning { equal_width, equal_count };

/// Monotone binning into `bins` symbols. Equal-width bins are half-open with
/// the maximum folded into the top bin. Equal-count bins follow rank
/// quantiles with ties broken by index; a constant series maps to symbol 0.
SymbolSeries discretize(std::span<const double> series, std::size_t bins, Binning method);

/// Circular binning of angles: bin k covers [2 pi k / bins, 2 pi (k + 1) / bins)
/// after wrapping into [0, 2 pi).
SymbolSeries discretize_angles(std::span<const double> angles, std::size_t bins);

/// Sparse joint histogram over a product alphabet; the plug-in estimator substrate.
class JointHistogram {
  public:
    explicit JointHistogram(std::vector<std::size_t> alphabets);

    /// Histogram of aligned series; one cell per time index.
    static JointHistogram from_series(std::span<const SymbolSeries> series);

    std::size_t dimension() const { return alphabets_.size(); }
    const std::vector<std::size_t>& alphabets() const { return alphabets_; }
    std::uint64_t total() const { return total_; }
    const std::map<std::vector<std::uint32_t>, std::uint64_t>& cells() const { return counts_; }

    void add(std::vector<std::uint32_t> cell, std::uint64_t count = 1);
    /// Histogram of the listed coordinates, summed over the rest.
    JointHistogram marginal(std::span<const std::size_t> vars) const;

  private:
    std::vector<std::size_t> alphabets_;
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts_;
    std::uint64_t total_{0};
};

/// Plug-in Shannon entropy in bits.
double entropy(const JointHistogram& h);
double entropy(const SymbolSeries& s);

/// I(X;Y) in bits for coordinate groups of one histogram.
double mutual_information(const JointHistogram& h, std::span<const std::size_t> x,
                          std::span<const std::size_t> y);
/// I(X;Y|Z) in bits for coordinate groups of one histogram.
double conditional_mutual_information(const JointHistogram& h, std::span<const std::size_t> x,
                                      std::span<const std::size_t> y, std::span<const std::size_t> z);

/// Aligned series fused into one symbol per time index. The alphabet is the
/// product alphabet when it is small, otherwise the distinct observed tuples.
SymbolSeries combine(std::span<const SymbolSeries> parts);

double mutual_information(const SymbolSeries& xs, const SymbolSeries& ys);
/// I(X;Y|Z) with Z the joint of `zs`; an empty list gives I(X;Y).
double conditional_mutual_information(const SymbolSeries& xs, const SymbolSeries& ys,
                                      std::span<const SymbolSeries> zs);

/// True when the nominal joint alphabet of the listed series exceeds N log2 N,
/// the regime where plug-in estimates are dominated by undersampling.
bool sparse_joint(std::span<const SymbolSeries> series);

/// Series of embedded histories: element t holds the history at time t + span.
SymbolSeries history_series(const SymbolSeries& s, const EmbeddingSpec& spec);
/// Present values aligned with history_series.
SymbolSeries present_series(const SymbolSeries& s, const EmbeddingSpec& spec);

/// I(target(t); source history | target history), in bits.
double transfer_entropy(const SymbolSeries& source, const SymbolSeries& target, const EmbeddingSpec& spec);

struct LaggedCorrelation {
    int best_lag{0};
    std::vector<double> profile;  // index k holds lag k - tau_max
};

/// C(tau) = mean_t v_i(t) . v_j(t + tau) for tau in [-tau_max, tau_max]. A
/// positive best lag means i leads j. Ties go to the smallest |tau|, then to
/// the negative lag.
LaggedCorrelation lagged_direction_correlation(std::span<const Vec2> vi, std::span<const Vec2> vj,
                                               std::size_t tau_max);

/// Circular-shift surrogate test of a statistic of a (source, rest) pair.
struct SurrogateSettings {
    std::size_t shifts{20};
    double quantile{0.95};
    std::uint64_t seed{0x5eed};

    bool operator==(const SurrogateSettings&) const = default;
};

/// Linear-interpolated quantile of `values` (q in [0, 1]).
double quantile(std::vector<double> values, double q);

/// Source series rotated left by `offset` samples.
SymbolSeries circular_shift(const SymbolSeries& s, std::size_t offset);

/// Offsets used by the surrogate test for a series of length `n`, drawn in
/// [n / 10, n - n / 10] from a stream seeded with `settings.seed ^ salt`.
std::vector<std::size_t> surrogate_offsets(std::size_t n, const SurrogateSettings& settings,
                                           std::uint64_t salt);

enum class GroupObservable { mean_heading, centroid_velocity };

/// How x_ibar(t-) is represented when estimating net influence.
enum class Conditioning {
    // All other agents' histories jointly. Exact, but degenerate once the
    // joint alphabet outgrows the sample count.
    all_agents,
    // The mean heading of all other agents, discretised like the group series.
    others_mean,
};

/// Which agents make up the group whose future is predicted.
enum class GroupScope {
    // Every agent, the focal one included.
    whole,
    // Every agent except the focal one, so an agent's own persistence does
    // not count as influence.
    rest,
};

struct InfluenceSettings {
    EmbeddingSpec embedding{};
    std::size_t bins{8};
    // equal_width: fixed circular sectors; equal_count: per-series angle quantiles.
    Binning binning{Binning::equal_width};
    GroupObservable group{GroupObservable::mean_heading};
    Conditioning conditioning{Conditioning::others_mean};
    GroupScope scope{GroupScope::whole};
    SurrogateSettings surrogate{};
    bool pairwise_te{true};

    bool operator==(const InfluenceSettings&) const = default;
};

struct AgentInfluence {
    double apparent_bits{0.0};
    double net_bits{0.0};           // estimate only; see estimator settings
    double net_null_threshold{0.0};  // surrogate quantile for net_bits
    bool net_significant{false};
};

struct InfluenceReport {
    InfluenceSettings settings;
    std::size_t n_agents{0};
    std::vector<std::size_t> agent_ids;  // column -> agent id of the dataset
    std::size_t samples{0};
    std::vector<AgentInfluence> agents;
    std::vector<std::vector<double>> te;            // te[j][i] = TE(j -> i)
    std::vector<std::vector<double>> te_threshold;  // surrogate quantile per pair
    std::vector<Edge> inferred_edges;               // j -> i where TE exceeds its threshold
    bool sparse_data_warning{false};
};

/// Symbolised observables of a dataset under the given settings.
struct SymbolisedDataset {
    std::vector<SymbolSeries> agents;
    SymbolSeries group;
    // others[i]: mean heading of every agent but i (others_mean conditioning).
    std::vector<SymbolSeries> others;
};
SymbolisedDataset symbolise(const TrajectoryDataset& ds, const InfluenceSettings& settings);

/// Net influence I(x_i(t-); y(t) | x_ibar(t-)) of one agent on the symbolised data.
double net_influence(const SymbolisedDataset& data, std::size_t agent, const InfluenceSettings& settings,
                     std::size_t source_shift = 0);
double apparent_influence(const SymbolisedDataset& data, std::size_t agent, const InfluenceSettings& settings);

/// Net influence of one agent with its surrogate threshold.
AgentInfluence agent_influence(const SymbolisedDataset& data, std::size_t agent,
                               const InfluenceSettings& settings);

InfluenceReport influence_scores(const TrajectoryDataset& ds, const InfluenceSettings& settings);

}  // namespace leadership
