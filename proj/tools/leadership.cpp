// Command-line front end: simulate -> infer -> classify, plus bench suites.
//
// Exit codes: 0 success, 1 bench assertion failed, 2 usage or config error,
// 3 numeric failure, 4 insufficient data, 5 input mismatch.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leadership/anatomy.hpp"
#include "leadership/bench.hpp"
#include "leadership/errors.hpp"
#include "leadership/infodyn.hpp"
#include "leadership/io.hpp"
#include "leadership/sandbox.hpp"

namespace fs = std::filesystem;
using namespace leadership;

namespace {

constexpr const char* kOutDirEnv = "LEADERSHIP_OUT_DIR";

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

std::string default_path(const std::string& name)
{
    const char* dir = std::getenv(kOutDirEnv);
    return (fs::path(dir && *dir ? dir : ".") / name).string();
}

std::string now_utc()
{
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void ensure_parent(const std::string& path)
{
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty()) {
        fs::create_directories(parent);
    }
}

std::ofstream open_out(const std::string& path)
{
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument(path + ": cannot write file");
    }
    return out;
}

void write_json(const std::string& path, const json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

std::string stem_path(const std::string& out, const std::string& suffix)
{
    fs::path p(out);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

RunManifest manifest_for(const json& identity, std::uint64_t seed, const std::string& input, const std::string& output)
{
    RunManifest m;
    m.config_hash = config_hash(identity);
    m.seed = seed;
    m.tool_version = kToolVersion;
    m.created = now_utc();
    m.input = input;
    m.output = output;
    return m;
}

TrajectoryDataset load_trajectory(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument(path + ": cannot open file");
    }
    try {
        return read_trajectory_csv(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<std::size_t> steps;
    double beta_deg{180.0};
    double g_deg{112.5};
    std::string out;
};

ScenarioSpec preset_scenario(const SimulateArgs& a)
{
    ScenarioOptions opts;
    opts.seed = a.seed.value_or(1);
    opts.n_steps = a.steps.value_or(3000);
    const auto n = [&](std::size_t def) { return a.n.value_or(def); };
    if (a.preset == "flock") return make_flock(n(30), opts);
    if (a.preset == "chain") return make_chain(n(8), 0.5, opts);
    if (a.preset == "informed") return make_informed(n(50), 0.1, 0.5, from_angle(radians(a.g_deg)), opts);
    if (a.preset == "emergent") return make_emergent(n(50), radians(a.beta_deg), opts);
    if (a.preset == "fig1" || a.preset == "fig2") return make_hierarchy(a.preset, opts);
    if (a.preset == "shepherd") return make_shepherd(n(10), 2.0, Vec2{40.0, 40.0}, 5.0, opts);
    throw std::invalid_argument("unknown preset '" + a.preset +
                                "' (flock, chain, informed, emergent, fig1, fig2, shepherd)");
}

int cmd_simulate(const SimulateArgs& a)
{
    if (a.config.empty() == a.preset.empty()) {
        throw std::invalid_argument("simulate needs exactly one of --config or --preset");
    }
    ScenarioSpec spec;
    if (!a.config.empty()) {
        const auto j = read_json_file(a.config);
        try {
            spec = scenario_from_json(j);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(a.config + ": " + e.what());
        }
        if (a.seed) {
            spec.config.seed = *a.seed;
        }
    } else {
        spec = preset_scenario(a);
    }
    const std::string out = a.out.empty() ? default_path("trajectory.csv") : a.out;
    const auto ds = simulate(spec);
    {
        auto f = open_out(out);
        write_trajectory_csv(f, ds);
    }
    const json scenario = to_json(spec);
    auto m = manifest_for(scenario, spec.config.seed, a.config.empty() ? "preset:" + a.preset : a.config, out);
    m.dt = ds.dt;
    m.n_agents = ds.n_agents;
    m.n_frames = ds.n_frames();
    json j = {{"manifest", to_json(m)}, {"scenario", scenario}};
    write_json(out + ".manifest.json", j);
    std::cerr << "simulate: " << ds.n_agents << " agents, " << ds.n_frames() << " frames -> " << out << "\n";
    return 0;
}

// --- infer ----------------------------------------------------------------

struct InferArgs {
    std::string traj;
    std::size_t bins{8};
    std::size_t tau{1};
    std::size_t history{1};
    std::string binning{"equal_width"};
    std::string group{"mean_heading"};
    std::string scope{"whole"};
    std::string conditioning{"others_mean"};
    std::size_t shifts{20};
    double quantile{0.95};
    std::uint64_t surrogate_seed{0x5eed};
    bool no_te{false};
    std::string out;
};

int cmd_infer(const InferArgs& a)
{
    if (a.bins < 2) {
        throw std::invalid_argument("--bins must be >= 2");
    }
    if (a.tau < 1 || a.history < 1) {
        throw std::invalid_argument("--tau and --history must be >= 1");
    }
    json sj = {{"lag", a.tau},
               {"history", a.history},
               {"bins", a.bins},
               {"binning", a.binning},
               {"group_observable", a.group},
               {"scope", a.scope},
               {"conditioning", a.conditioning},
               {"surrogate", {{"shifts", a.shifts}, {"quantile", a.quantile}, {"seed", a.surrogate_seed}}},
               {"pairwise_te", !a.no_te}};
    const auto settings = influence_settings_from_json(sj);
    const auto ds = load_trajectory(a.traj);
    std::cerr << "infer: settings " << to_json(settings).dump() << "\n";
    const auto report = influence_scores(ds, settings);
    const std::string out = a.out.empty() ? default_path("influence.json") : a.out;
    json j = to_json(report);
    j["manifest"] = to_json(manifest_for({{"settings", j["settings"]}, {"input", config_hash(slurp(a.traj))}},
                                         settings.surrogate.seed, a.traj, out));
    write_json(out, j);
    if (report.sparse_data_warning) {
        std::cerr << "infer: warning: joint alphabet exceeds N log N; estimates are undersampled\n";
    }
    std::cerr << "infer: " << report.inferred_edges.size() << " inferred edges -> " << out << "\n";
    return 0;
}

// --- classify -------------------------------------------------------------

struct ClassifyArgs {
    std::string traj;
    std::string influence;
    std::string scenario;
    std::size_t window{500};
    std::optional<std::size_t> window_stride;
    std::vector<std::size_t> k_list{1, 5, 10, 50};
    std::size_t budget{0};
    double pos_noise{0.0};
    double heading_noise_deg{0.0};
    std::size_t obs_stride{1};
    std::vector<std::size_t> hide;
    std::uint64_t obs_seed{1};
    std::string out;
};

void write_plot_data(const std::string& out, const LeadershipReport& r)
{
    {
        auto f = open_out(stem_path(out, "_influence.csv"));
        f << "agent_id,apparent_bits,net_bits,net_significant,inferred_reach\n";
        for (const auto& a : r.agents) {
            f << a.agent_id << ',' << a.apparent_bits << ',' << a.net_bits << ',' << (a.net_significant ? 1 : 0)
              << ',' << a.inferred_reach << '\n';
        }
    }
    {
        auto f = open_out(stem_path(out, "_consistency.csv"));
        f << "agent_id,window_start,detected\n";
        for (const auto& a : r.agents) {
            if (!a.consistency) {
                continue;
            }
            for (std::size_t k = 0; k < a.consistency->detected.size(); ++k) {
                f << a.agent_id << ',' << a.consistency->window_starts[k] << ','
                  << (a.consistency->detected[k] ? 1 : 0) << '\n';
            }
        }
    }
    {
        auto f = open_out(stem_path(out, "_granularity.csv"));
        f << "agent_id,k,samples,net_bits,threshold,detected\n";
        for (const auto& a : r.agents) {
            for (const auto& p : a.granularity) {
                f << a.agent_id << ',' << p.k << ',' << p.samples << ',' << p.net_bits << ',' << p.threshold << ','
                  << (p.detected ? 1 : 0) << '\n';
            }
        }
    }
}

std::shared_ptr<const ScenarioSpec> find_ground_truth(const ClassifyArgs& a, const TrajectoryDataset& ds)
{
    json j;
    std::string source;
    if (!a.scenario.empty()) {
        j = read_json_file(a.scenario);
        source = a.scenario;
    } else if (fs::exists(a.traj + ".manifest.json")) {
        j = read_json_file(a.traj + ".manifest.json");
        source = a.traj + ".manifest.json";
    } else {
        return nullptr;
    }
    ScenarioSpec spec;
    try {
        spec = scenario_from_json(j.contains("scenario") ? j["scenario"] : j);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(source + ": " + e.what());
    }
    if (spec.config.n_agents != ds.n_agents) {
        throw InputMismatch(source + ": scenario has " + std::to_string(spec.config.n_agents) +
                            " agents, trajectory has " + std::to_string(ds.n_agents));
    }
    return std::make_shared<const ScenarioSpec>(std::move(spec));
}

int cmd_classify(const ClassifyArgs& a)
{
    auto ds = load_trajectory(a.traj);
    const auto rj = read_json_file(a.influence);
    InfluenceReport report;
    try {
        report = influence_report_from_json(rj);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(a.influence + ": " + e.what());
    }
    ds.ground_truth = find_ground_truth(a, ds);

    ClassifyOptions opts;
    opts.window = a.window;
    opts.window_stride = a.window_stride.value_or(a.window);
    opts.k_values = a.k_list;
    opts.budget = a.budget;
    opts.observation.position_noise_sigma = a.pos_noise;
    opts.observation.heading_noise_sigma = radians(a.heading_noise_deg);
    opts.observation.stride = a.obs_stride;
    opts.observation.hidden = a.hide;
    opts.observation_seed = a.obs_seed;
    const auto lr = classify(ds, report, opts);

    const std::string out = a.out.empty() ? default_path("leadership.json") : a.out;
    json j = to_json(lr);
    j["manifest"] = to_json(manifest_for(
        {{"options", j["thresholds"]}, {"observation", j["observation"]}, {"window", a.window},
         {"k_values", a.k_list}, {"trajectory", config_hash(slurp(a.traj))}, {"influence", config_hash(rj)}},
        a.obs_seed, a.traj + "," + a.influence, out));
    write_json(out, j);
    write_plot_data(out, lr);
    std::cerr << "classify: " << lr.agents.size() << " agents -> " << out << "\n";
    return 0;
}

// --- bench ----------------------------------------------------------------

int cmd_bench(const std::string& name, std::size_t seeds, const std::string& out_dir)
{
    std::vector<std::string> names;
    if (name == "all") {
        names = suite_names();
    } else {
        suite(name);  // validates the name
        names.push_back(name);
    }
    const std::string dir = out_dir.empty() ? default_path("bench") : out_dir;
    fs::create_directories(dir);
    bool all_ok = true;
    for (const auto& n : names) {
        const auto r = suite(n)(seed_range(seeds));
        json j = {{"suite", r.name},
                  {"seeds", seeds},
                  {"passed", r.ok()},
                  {"criteria", r.criteria},
                  {"criteria_passed", r.passed},
                  {"detail", r.detail}};
        j["manifest"] = to_json(manifest_for({{"suite", n}, {"seeds", seeds}}, seeds, "suite:" + n,
                                             (fs::path(dir) / (n + ".json")).string()));
        write_json((fs::path(dir) / (n + ".json")).string(), j);
        for (std::size_t k = 0; k < r.criteria.size(); ++k) {
            std::cout << (r.passed[k] ? "PASS " : "FAIL ") << n << ": " << r.criteria[k] << "\n";
        }
        all_ok = all_ok && r.ok();
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Leadership inference sandbox: simulate groups with injected leaders and measure influence"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Run a scenario and write a trajectory CSV plus manifest");
    s->add_option("--config", sim.config, "Scenario JSON file");
    s->add_option("--preset", sim.preset, "flock, chain, informed, emergent, fig1, fig2 or shepherd");
    s->add_option("--seed", sim.seed, "Seed (overrides the config)");
    s->add_option("--n", sim.n, "Agent count for presets");
    s->add_option("--steps", sim.steps, "Step count for presets");
    s->add_option("--beta-deg", sim.beta_deg, "Blind wedge width in degrees (emergent preset)");
    s->add_option("--g-deg", sim.g_deg, "Preferred direction in degrees (informed preset)");
    s->add_option("--out", sim.out, std::string("Trajectory CSV (default $") + kOutDirEnv + "/trajectory.csv)");

    InferArgs inf;
    auto* i = app.add_subcommand("infer", "Estimate apparent/net influence and the TE graph");
    i->add_option("--traj", inf.traj, "Trajectory CSV")->required();
    i->add_option("--bins", inf.bins, "Symbols per series (>= 2)");
    i->add_option("--tau", inf.tau, "Lag in frames (>= 1)");
    i->add_option("--history", inf.history, "History length (>= 1)");
    i->add_option("--binning", inf.binning, "equal_width or equal_count");
    i->add_option("--group", inf.group, "Group observable: mean_heading or centroid_velocity");
    i->add_option("--scope", inf.scope, "Group predicted by net influence: whole or rest");
    i->add_option("--conditioning", inf.conditioning, "others_mean or all_agents");
    i->add_option("--shifts", inf.shifts, "Circular-shift surrogates per test");
    i->add_option("--quantile", inf.quantile, "Surrogate quantile used as threshold");
    i->add_option("--surrogate-seed", inf.surrogate_seed, "Seed of the surrogate offsets");
    i->add_flag("--no-te", inf.no_te, "Skip the pairwise TE matrix");
    i->add_option("--out", inf.out, "Influence report JSON");

    ClassifyArgs cl;
    auto* c = app.add_subcommand("classify", "Classify leadership along the anatomy axes");
    c->add_option("--traj", cl.traj, "Trajectory CSV")->required();
    c->add_option("--influence", cl.influence, "Influence report JSON from infer")->required();
    c->add_option("--scenario", cl.scenario, "Scenario JSON with ground truth (default: trajectory manifest)");
    c->add_option("--window", cl.window, "Consistency window in frames");
    c->add_option("--window-stride", cl.window_stride, "Window stride in frames (default: window)");
    c->add_option("--k-list", cl.k_list, "Granularity strides")->delimiter(',');
    c->add_option("--budget", cl.budget, "Frames per granularity test (0 = all)");
    c->add_option("--pos-noise", cl.pos_noise, "Observation position noise sigma");
    c->add_option("--heading-noise-deg", cl.heading_noise_deg, "Observation heading noise sigma in degrees");
    c->add_option("--obs-stride", cl.obs_stride, "Observation subsampling stride");
    c->add_option("--hide", cl.hide, "Agent ids hidden from the observer")->delimiter(',');
    c->add_option("--obs-seed", cl.obs_seed, "Seed of the observation noise");
    c->add_option("--out", cl.out, "Leadership report JSON; plot CSVs are written next to it");

    std::string suite_name;
    std::size_t seeds = 10;
    std::string out_dir;
    auto* b = app.add_subcommand("bench", "Run a benchmark suite over seeds 1..N");
    b->add_option("--suite", suite_name, "pitfall, informed, emergent, granularity, temporal, observability, target or all")
        ->required();
    b->add_option("--seeds", seeds, "Number of seeds");
    b->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*s) return cmd_simulate(sim);
        if (*i) return cmd_infer(inf);
        if (*c) return cmd_classify(cl);
        if (*b) return cmd_bench(suite_name, seeds, out_dir);
    } catch (const NumericFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InsufficientData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InputMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
