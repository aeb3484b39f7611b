#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "leadership/anatomy.hpp"
#include "leadership/infodyn.hpp"
#include "leadership/io.hpp"
#include "leadership/sandbox.hpp"

namespace leadership {

struct PitfallSeed {
    std::uint64_t seed{0};
    std::size_t true_edges{0};
    std::size_t true_positives{0};
    std::size_t false_positives{0};
    double recall{0.0};
    double precision{0.0};  // 0 when nothing was inferred
    bool no_detected_influence{false};
};

struct PitfallOptions {
    std::size_t n_steps{3000};
    InfluenceSettings settings{};
    AgentParams params{};
};

struct PitfallReport {
    std::size_t n{0};
    std::vector<PitfallSeed> seeds;
    std::size_t superset_seeds{0};  // recall 1 and at least one false positive
};

/// Chain scenario per seed, TE-inferred graph scored against the chain.
PitfallReport pitfall_benchmark(std::size_t n, std::span<const std::uint64_t> seeds,
                                const PitfallOptions& options = {});

json to_json(const PitfallReport& r);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

/// Time-averaged projection of each agent's offset from its cluster centroid
/// on the cluster's mean heading. Clusters are connected components of the
/// "closer than `link`" graph in each frame.
std::vector<double> front_ness(const TrajectoryDataset& ds, double link);

/// Outcome of one benchmark suite: one entry per seed plus an aggregate.
struct SuiteResult {
    std::string name;
    std::vector<std::string> criteria;  // one line per checked claim
    std::vector<bool> passed;           // aligned with criteria
    json detail;

    bool ok() const;
};

using Suite = std::function<SuiteResult(std::span<const std::uint64_t> seeds)>;

// Suites behind the acceptance checks and `bench`. Each documents its
// scenario parameters in `detail`.
SuiteResult pitfall_suite(std::span<const std::uint64_t> seeds);
SuiteResult informed_suite(std::span<const std::uint64_t> seeds);
SuiteResult emergent_suite(std::span<const std::uint64_t> seeds);
SuiteResult temporal_suite(std::span<const std::uint64_t> seeds);
SuiteResult granularity_suite(std::span<const std::uint64_t> seeds);
SuiteResult observability_suite(std::span<const std::uint64_t> seeds);
SuiteResult target_suite(std::span<const std::uint64_t> seeds);

/// Suite by name; throws std::invalid_argument for unknown names.
Suite suite(const std::string& name);
std::vector<std::string> suite_names();

/// Seeds 1..n.
std::vector<std::uint64_t> seed_range(std::size_t n);

}  // namespace leadership
