#include "leadership/sandbox.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace leadership {

namespace {

// Keeps the informed-set draw off the simulation stream.
constexpr std::uint64_t kSelectionSalt = 0x51ec7edULL;

RunConfig base_config(std::size_t n, const ScenarioOptions& opts)
{
    RunConfig cfg = default_config(n, opts.n_steps, opts.seed, opts.params);
    cfg.dt = opts.dt;
    cfg.initial.disc_radius = opts.disc_radius;
    return cfg;
}

ScenarioSpec finish(std::string name, RunConfig cfg)
{
    ScenarioSpec spec;
    spec.name = std::move(name);
    spec.truth = derive_truth(cfg);
    spec.config = std::move(cfg);
    return spec;
}

const std::map<std::string, Fixture>& fixtures()
{
    // Edge sets chosen to satisfy every textual statement about the two
    // hierarchy figures; the same lists ship as data/fixtures/*.edges.
    static const std::map<std::string, Fixture> table{
        {"fig1",
         {"n 10\n"
          "0 1 1\n0 9 1\n1 4 1\n9 4 1\n4 3 1\n3 5 1\n5 8 1\n8 6 1\n8 7 1\n6 2 1\n",
          {"A", "B", "C", "D", "G", "H", "I", "J", "L", "M"}}},
        {"fig2",
         {"n 12\n"
          "0 4 1\n0 5 1\n0 6 1\n0 10 1\n6 3 1\n6 1 1\n3 7 1\n1 11 1\n7 8 1\n11 9 1\n8 2 1\n",
          {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L"}}},
    };
    return table;
}

}  // namespace

GroundTruth derive_truth(const RunConfig& config)
{
    GroundTruth t;
    const double horizon = config.horizon();
    for (const auto& seg : config.sociality.segments()) {
        t.structure.push_back({seg.begin, std::min(seg.end, horizon), influence_graph(seg.weights).edges()});
    }

    for (std::size_t i = 0; i < config.n_agents; ++i) {
        const auto& p = config.params[i];
        const InformedSchedule* sched = nullptr;
        for (const auto& s : config.informed_schedules) {
            if (s.agent == i) {
                sched = &s;
            }
        }
        std::vector<ActiveInterval> active;
        if (sched) {
            for (const auto& seg : sched->segments) {
                if (seg.omega <= 0.0 || seg.begin >= horizon) {
                    continue;
                }
                const double end = std::min(seg.end, horizon);
                if (!active.empty() && active.back().end == seg.begin) {
                    active.back().end = end;
                } else {
                    active.push_back({i, seg.begin, end});
                }
            }
        } else if (p.omega > 0.0) {
            active.push_back({i, 0.0, horizon});
        }
        if (!active.empty()) {
            t.informed.push_back({i, p.omega, p.preferred_direction, p.goal});
            t.timeline.insert(t.timeline.end(), active.begin(), active.end());
        }
        if (p.blind_angle > 0.0) {
            t.emergent = true;
            t.blind_angle = std::max(t.blind_angle, p.blind_angle);
        }
    }
    return t;
}

void ScenarioSpec::validate() const
{
    config.validate();
    if (!labels.empty() && labels.size() != config.n_agents) {
        throw std::invalid_argument("scenario '" + name + "': labels do not match n_agents");
    }
    if (target && !(target->radius >= 0.0)) {
        throw std::invalid_argument("scenario '" + name + "': target radius must be >= 0");
    }
    if (!(truth == derive_truth(config))) {
        throw std::invalid_argument("scenario '" + name + "': ground truth disagrees with its run config");
    }
}

ScenarioSpec make_flock(std::size_t n, const ScenarioOptions& opts)
{
    return finish("flock", base_config(n, opts));
}

ScenarioSpec make_chain(std::size_t n, double alpha, const ScenarioOptions& opts)
{
    if (n < 2) {
        throw std::invalid_argument("chain needs n >= 2");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    RunConfig cfg = base_config(n, opts);
    DenseMatrix s(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s(i, i + 1) = 1.0;
    }
    cfg.sociality = SocialityMatrix(std::move(s));
    for (auto& p : cfg.params) {
        p.alpha = alpha;
    }
    return finish("chain", std::move(cfg));
}

ScenarioSpec make_informed(std::size_t n, double fraction, double omega, const Vec2& g, const ScenarioOptions& opts)
{
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("informed fraction must lie in (0, 1]");
    }
    if (!(omega >= 0.0) || !is_unit(g)) {
        throw std::invalid_argument("informed agents need omega >= 0 and a unit preferred direction");
    }
    RunConfig cfg = base_config(n, opts);
    // Guard the ceiling against 0.1 * 50 = 5.000000000000001.
    const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(opts.seed ^ kSelectionSalt);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::min(k, n));
    for (const auto i : order) {
        cfg.params[i].omega = omega;
        cfg.params[i].preferred_direction = g;
    }
    return finish("informed", std::move(cfg));
}

ScenarioSpec make_emergent(std::size_t n, double beta, const ScenarioOptions& opts)
{
    if (!(beta >= 0.0 && beta < 2.0 * std::numbers::pi)) {
        throw std::invalid_argument("blind angle must lie in [0, 2 pi)");
    }
    RunConfig cfg = base_config(n, opts);
    for (auto& p : cfg.params) {
        p.blind_angle = beta;
    }
    return finish("emergent", std::move(cfg));
}

const Fixture& fixture(const std::string& name)
{
    const auto& table = fixtures();
    const auto it = table.find(name);
    if (it == table.end()) {
        throw std::invalid_argument("unknown fixture '" + name + "' (expected fig1 or fig2)");
    }
    return it->second;
}

ScenarioSpec make_hierarchy(const std::string& name, const ScenarioOptions& opts)
{
    const auto& f = fixture(name);
    DenseMatrix s = parse_matrix(f.edges);
    RunConfig cfg = base_config(s.size(), opts);
    cfg.sociality = SocialityMatrix(std::move(s));
    auto spec = finish(name, std::move(cfg));
    spec.labels = f.labels;
    return spec;
}

ScenarioSpec make_shepherd(std::size_t n, double omega, const Vec2& goal, double radius, const ScenarioOptions& opts)
{
    if (n < 1 || !(omega > 0.0) || !goal.finite()) {
        throw std::invalid_argument("shepherd needs n >= 1, omega > 0 and a finite goal");
    }
    RunConfig cfg = base_config(n, opts);
    cfg.params[0].omega = omega;
    cfg.params[0].goal = goal;
    auto spec = finish("shepherd", std::move(cfg));
    spec.target = TargetRegion{goal, radius};
    return spec;
}

ScenarioSpec make_scheduled(const ScenarioSpec& base, const Schedules& schedules)
{
    ScenarioSpec spec = base;
    if (!schedules.sociality.empty()) {
        spec.config.sociality = SocialityMatrix(schedules.sociality);
    }
    for (const auto& s : schedules.informed) {
        auto& list = spec.config.informed_schedules;
        std::erase_if(list, [&](const InformedSchedule& old) { return old.agent == s.agent; });
        list.push_back(s);
    }
    std::sort(spec.config.informed_schedules.begin(), spec.config.informed_schedules.end(),
              [](const auto& a, const auto& b) { return a.agent < b.agent; });
    spec.config.validate();
    spec.truth = derive_truth(spec.config);
    spec.name = base.name + "+scheduled";
    return spec;
}

TrajectoryDataset simulate(const ScenarioSpec& spec)
{
    spec.validate();
    TrajectoryDataset ds = simulate(spec.config);
    ds.ground_truth = std::make_shared<const ScenarioSpec>(spec);
    return ds;
}

}  // namespace leadership
