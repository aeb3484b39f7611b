#include "leadership/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "leadership/errors.hpp"
#include "leadership/format.hpp"

namespace leadership {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw std::invalid_argument((path.empty() ? std::string("/") : path) + ": " + what);
}

const json* find(const json& j, const char* key)
{
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double num(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

double num_or(const json& j, const char* key, const std::string& path, double def)
{
    const auto* v = find(j, key);
    return v ? num(*v, path + "/" + key) : def;
}

std::size_t count_or(const json& j, const char* key, const std::string& path, std::size_t def)
{
    const auto* v = find(j, key);
    return v ? count(*v, path + "/" + key) : def;
}

Vec2 vec(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected [x, y]");
    }
    return {num(j[0], path + "/0"), num(j[1], path + "/1")};
}

std::optional<Vec2> opt_vec(const json& j, const char* key, const std::string& path)
{
    const auto* v = find(j, key);
    if (!v || v->is_null()) {
        return std::nullopt;
    }
    return vec(*v, path + "/" + key);
}

json opt(const std::optional<Vec2>& v) { return v ? to_json(*v) : json(nullptr); }

json time_value(double t) { return std::isinf(t) ? json(nullptr) : json(t); }

AgentParams params_from_json(const json& j, const std::string& path, const AgentParams& base = {})
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    AgentParams p = base;
    p.speed = num_or(j, "speed", path, p.speed);
    p.r_repulsion = num_or(j, "r_repulsion", path, p.r_repulsion);
    p.r_orientation = num_or(j, "r_orientation", path, p.r_orientation);
    p.r_attraction = num_or(j, "r_attraction", path, p.r_attraction);
    p.blind_angle = num_or(j, "blind_angle", path, p.blind_angle);
    p.alpha = num_or(j, "alpha", path, p.alpha);
    p.omega = num_or(j, "omega", path, p.omega);
    if (find(j, "preferred_direction")) {
        p.preferred_direction = opt_vec(j, "preferred_direction", path);
    }
    if (find(j, "goal")) {
        p.goal = opt_vec(j, "goal", path);
    }
    p.noise_sigma = num_or(j, "noise_sigma", path, p.noise_sigma);
    p.max_turn = num_or(j, "max_turn", path, p.max_turn);
    return p;
}

DenseMatrix matrix_from_json(const json& j, std::size_t n, const std::string& path)
{
    if (j.is_string()) {
        if (j.get<std::string>() != "all_ones") {
            fail(path, "unknown matrix keyword (expected all_ones)");
        }
        return DenseMatrix::all_ones(n);
    }
    if (!j.is_object()) {
        fail(path, "expected a matrix object");
    }
    try {
        if (const auto* d = find(j, "dense")) {
            if (!d->is_array()) {
                fail(path + "/dense", "expected an array of rows");
            }
            DenseMatrix m(d->size());
            for (std::size_t i = 0; i < d->size(); ++i) {
                const auto& row = (*d)[i];
                if (!row.is_array() || row.size() != d->size()) {
                    fail(path + "/dense/" + std::to_string(i), "row length differs from row count");
                }
                for (std::size_t k = 0; k < row.size(); ++k) {
                    m(i, k) = num(row[k], path + "/dense/" + std::to_string(i) + "/" + std::to_string(k));
                }
            }
            m.validate();
            return m;
        }
        if (const auto* t = find(j, "edge_list")) {
            if (!t->is_string()) {
                fail(path + "/edge_list", "expected edge-list text");
            }
            return parse_matrix(t->get<std::string>());
        }
        if (const auto* e = find(j, "edges")) {
            EdgeList list;
            list.n = count_or(j, "n", path, n);
            if (!e->is_array()) {
                fail(path + "/edges", "expected [[j, i, weight], ...]");
            }
            for (std::size_t k = 0; k < e->size(); ++k) {
                const auto& row = (*e)[k];
                const std::string p = path + "/edges/" + std::to_string(k);
                if (!row.is_array() || row.size() != 3) {
                    fail(p, "expected [j, i, weight]");
                }
                list.edges.push_back({count(row[0], p + "/0"), count(row[1], p + "/1"), num(row[2], p + "/2")});
            }
            return to_matrix(list);
        }
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        if (!msg.empty() && msg.front() == '/') {
            throw;
        }
        fail(path, msg);
    }
    fail(path, "matrix needs one of dense, edge_list or edges");
}

SocialityMatrix sociality_from_json(const json& j, std::size_t n, const std::string& path)
{
    if (j.is_object() && find(j, "schedule")) {
        const auto& s = j["schedule"];
        if (!s.is_array() || s.empty()) {
            fail(path + "/schedule", "expected a non-empty array");
        }
        std::vector<SocialityMatrix::Segment> segs;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const std::string p = path + "/schedule/" + std::to_string(k);
            SocialityMatrix::Segment seg;
            seg.begin = num_or(s[k], "begin", p, 0.0);
            const auto* end = find(s[k], "end");
            seg.end = (!end || end->is_null()) ? std::numeric_limits<double>::infinity() : num(*end, p + "/end");
            seg.weights = matrix_from_json(s[k].contains("matrix") ? s[k]["matrix"] : s[k], n, p);
            segs.push_back(std::move(seg));
        }
        try {
            return SocialityMatrix(std::move(segs));
        } catch (const std::invalid_argument& e) {
            fail(path + "/schedule", e.what());
        }
    }
    return SocialityMatrix(matrix_from_json(j, n, path));
}

Binning binning_from(const std::string& s)
{
    if (s == "equal_width") return Binning::equal_width;
    if (s == "equal_count") return Binning::equal_count;
    throw std::invalid_argument("unknown binning '" + s + "'");
}

const char* name(Binning b) { return b == Binning::equal_width ? "equal_width" : "equal_count"; }
const char* name(GroupObservable g) { return g == GroupObservable::mean_heading ? "mean_heading" : "centroid_velocity"; }
const char* name(Conditioning c) { return c == Conditioning::all_agents ? "all_agents" : "others_mean"; }
const char* name(GroupScope s) { return s == GroupScope::whole ? "whole" : "rest"; }

std::string str(const json& j, const char* key, const std::string& path, const std::string& def)
{
    const auto* v = find(j, key);
    if (!v) {
        return def;
    }
    if (!v->is_string()) {
        fail(path + "/" + key, "expected a string");
    }
    return v->get<std::string>();
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

json to_json(const Vec2& v) { return json::array({v.x, v.y}); }

json to_json(const AgentParams& p)
{
    return {{"speed", p.speed},
            {"r_repulsion", p.r_repulsion},
            {"r_orientation", p.r_orientation},
            {"r_attraction", p.r_attraction},
            {"blind_angle", p.blind_angle},
            {"alpha", p.alpha},
            {"omega", p.omega},
            {"preferred_direction", opt(p.preferred_direction)},
            {"goal", opt(p.goal)},
            {"noise_sigma", p.noise_sigma},
            {"max_turn", p.max_turn}};
}

json to_json(const DenseMatrix& m)
{
    json edges = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m(i, j) != 0.0) {
                edges.push_back({j, i, m(i, j)});
            }
        }
    }
    return {{"n", m.size()}, {"edges", edges}};
}

json to_json(const SocialityMatrix& s)
{
    json sched = json::array();
    for (const auto& seg : s.segments()) {
        json m = to_json(seg.weights);
        m["begin"] = seg.begin;
        m["end"] = time_value(seg.end);
        sched.push_back(m);
    }
    return {{"schedule", sched}};
}

json to_json(const RunConfig& c)
{
    json params = json::array();
    for (const auto& p : c.params) {
        params.push_back(to_json(p));
    }
    json informed = json::array();
    for (const auto& s : c.informed_schedules) {
        json segs = json::array();
        for (const auto& seg : s.segments) {
            segs.push_back({{"begin", seg.begin},
                            {"end", time_value(seg.end)},
                            {"omega", seg.omega},
                            {"preferred_direction", opt(seg.preferred_direction)}});
        }
        informed.push_back({{"agent", s.agent}, {"segments", segs}});
    }
    json initial = {{"disc_radius", c.initial.disc_radius}};
    if (c.initial.frame) {
        json f = json::array();
        for (const auto& a : *c.initial.frame) {
            f.push_back({{"position", to_json(a.position)}, {"heading", to_json(a.heading)}});
        }
        initial["frame"] = f;
    }
    return {{"n_agents", c.n_agents},
            {"dt", c.dt},
            {"n_steps", c.n_steps},
            {"seed", c.seed},
            {"params", params},
            {"sociality", to_json(c.sociality)},
            {"initial", initial},
            {"informed_schedules", informed}};
}

json to_json(const GroundTruth& t)
{
    json structure = json::array();
    for (const auto& s : t.structure) {
        json edges = json::array();
        for (const auto& e : s.edges) {
            edges.push_back({e.from, e.to, e.weight});
        }
        structure.push_back({{"begin", s.begin}, {"end", time_value(s.end)}, {"edges", edges}});
    }
    json informed = json::array();
    for (const auto& i : t.informed) {
        informed.push_back({{"agent", i.agent},
                            {"omega", i.omega},
                            {"preferred_direction", opt(i.preferred_direction)},
                            {"goal", opt(i.goal)}});
    }
    json timeline = json::array();
    for (const auto& a : t.timeline) {
        timeline.push_back({{"agent", a.agent}, {"begin", a.begin}, {"end", a.end}});
    }
    return {{"structure", structure},
            {"informed", informed},
            {"timeline", timeline},
            {"emergent", t.emergent},
            {"blind_angle", t.blind_angle}};
}

json to_json(const ScenarioSpec& s)
{
    json j = {{"name", s.name}, {"config", to_json(s.config)}, {"truth", to_json(s.truth)}};
    if (!s.labels.empty()) {
        j["labels"] = s.labels;
    }
    if (s.target) {
        j["target"] = {{"centre", to_json(s.target->centre)}, {"radius", s.target->radius}};
    }
    return j;
}

RunConfig run_config_from_json(const json& j, const std::string& path)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    RunConfig c;
    const auto* n = find(j, "n_agents");
    if (!n) {
        fail(path, "missing n_agents");
    }
    c.n_agents = count(*n, path + "/n_agents");
    c.dt = num_or(j, "dt", path, c.dt);
    c.n_steps = count_or(j, "n_steps", path, c.n_steps);
    if (const auto* seed = find(j, "seed")) {
        if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<long long>() >= 0)) {
            fail(path + "/seed", "expected a non-negative integer");
        }
        c.seed = seed->get<std::uint64_t>();
    }
    const auto* params = find(j, "params");
    if (!params || params->is_object()) {
        c.params.assign(c.n_agents, params ? params_from_json(*params, path + "/params") : AgentParams{});
    } else if (params->is_array()) {
        for (std::size_t k = 0; k < params->size(); ++k) {
            c.params.push_back(params_from_json((*params)[k], path + "/params/" + std::to_string(k)));
        }
    } else {
        fail(path + "/params", "expected an object or an array of objects");
    }
    if (const auto* overrides = find(j, "overrides")) {
        // {"agent": k, ...fields}: per-agent changes on top of shared params.
        if (!overrides->is_array()) {
            fail(path + "/overrides", "expected an array");
        }
        for (std::size_t k = 0; k < overrides->size(); ++k) {
            const std::string p = path + "/overrides/" + std::to_string(k);
            const auto* a = find((*overrides)[k], "agent");
            if (!a) {
                fail(p, "missing agent");
            }
            const auto i = count(*a, p + "/agent");
            if (i >= c.params.size()) {
                fail(p + "/agent", "agent out of range");
            }
            c.params[i] = params_from_json((*overrides)[k], p, c.params[i]);
        }
    }
    const auto* soc = find(j, "sociality");
    c.sociality = soc ? sociality_from_json(*soc, c.n_agents, path + "/sociality")
                      : SocialityMatrix(DenseMatrix::all_ones(c.n_agents));
    if (const auto* init = find(j, "initial")) {
        c.initial.disc_radius = num_or(*init, "disc_radius", path + "/initial", c.initial.disc_radius);
        if (const auto* f = find(*init, "frame")) {
            Frame frame;
            for (std::size_t k = 0; k < f->size(); ++k) {
                const std::string p = path + "/initial/frame/" + std::to_string(k);
                AgentState a;
                a.position = vec((*f)[k].at("position"), p + "/position");
                a.heading = vec((*f)[k].at("heading"), p + "/heading");
                frame.push_back(a);
            }
            c.initial.frame = std::move(frame);
        }
    }
    if (const auto* inf = find(j, "informed_schedules")) {
        for (std::size_t k = 0; k < inf->size(); ++k) {
            const std::string p = path + "/informed_schedules/" + std::to_string(k);
            InformedSchedule s;
            s.agent = count((*inf)[k].at("agent"), p + "/agent");
            const auto& segs = (*inf)[k].at("segments");
            for (std::size_t m = 0; m < segs.size(); ++m) {
                const std::string q = p + "/segments/" + std::to_string(m);
                InformedSegment seg;
                seg.begin = num_or(segs[m], "begin", q, 0.0);
                const auto* end = find(segs[m], "end");
                seg.end = (!end || end->is_null()) ? std::numeric_limits<double>::infinity() : num(*end, q + "/end");
                seg.omega = num_or(segs[m], "omega", q, 0.0);
                seg.preferred_direction = opt_vec(segs[m], "preferred_direction", q);
                s.segments.push_back(seg);
            }
            c.informed_schedules.push_back(std::move(s));
        }
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return c;
}

ScenarioSpec scenario_from_json(const json& j)
{
    if (!j.is_object()) {
        fail("", "expected a scenario object");
    }
    ScenarioSpec s;
    s.name = str(j, "name", "", "custom");
    const auto* cfg = find(j, "config");
    s.config = cfg ? run_config_from_json(*cfg, "/config") : run_config_from_json(j, "");
    s.truth = derive_truth(s.config);
    if (const auto* labels = find(j, "labels")) {
        s.labels = labels->get<std::vector<std::string>>();
    }
    if (const auto* target = find(j, "target")) {
        s.target = TargetRegion{vec(target->at("centre"), "/target/centre"), num_or(*target, "radius", "/target", 0.0)};
    }
    if (const auto* truth = find(j, "truth")) {
        if (to_json(s.truth) != *truth) {
            fail("/truth", "ground truth disagrees with the run config");
        }
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        fail("", e.what());
    }
    return s;
}

json to_json(const InfluenceSettings& s)
{
    return {{"lag", s.embedding.lag},
            {"history", s.embedding.history},
            {"bins", s.bins},
            {"binning", name(s.binning)},
            {"group_observable", name(s.group)},
            {"conditioning", name(s.conditioning)},
            {"scope", name(s.scope)},
            {"surrogate", {{"method", "circular_shift"},
                           {"shifts", s.surrogate.shifts},
                           {"quantile", s.surrogate.quantile},
                           {"seed", s.surrogate.seed}}},
            {"pairwise_te", s.pairwise_te},
            {"estimator", "plug-in histogram"},
            {"units", "bits"}};
}

InfluenceSettings influence_settings_from_json(const json& j)
{
    const std::string path = "/settings";
    InfluenceSettings s;
    s.embedding.lag = count_or(j, "lag", path, s.embedding.lag);
    s.embedding.history = count_or(j, "history", path, s.embedding.history);
    s.bins = count_or(j, "bins", path, s.bins);
    try {
        s.binning = binning_from(str(j, "binning", path, name(s.binning)));
    } catch (const std::invalid_argument& e) {
        fail(path + "/binning", e.what());
    }
    const auto group = str(j, "group_observable", path, name(s.group));
    if (group != "mean_heading" && group != "centroid_velocity") {
        fail(path + "/group_observable", "unknown observable '" + group + "'");
    }
    s.group = group == "mean_heading" ? GroupObservable::mean_heading : GroupObservable::centroid_velocity;
    const auto cond = str(j, "conditioning", path, name(s.conditioning));
    if (cond != "all_agents" && cond != "others_mean") {
        fail(path + "/conditioning", "unknown conditioning '" + cond + "'");
    }
    s.conditioning = cond == "all_agents" ? Conditioning::all_agents : Conditioning::others_mean;
    const auto scope = str(j, "scope", path, name(s.scope));
    if (scope != "whole" && scope != "rest") {
        fail(path + "/scope", "unknown scope '" + scope + "'");
    }
    s.scope = scope == "whole" ? GroupScope::whole : GroupScope::rest;
    if (const auto* sur = find(j, "surrogate")) {
        s.surrogate.shifts = count_or(*sur, "shifts", path + "/surrogate", s.surrogate.shifts);
        s.surrogate.quantile = num_or(*sur, "quantile", path + "/surrogate", s.surrogate.quantile);
        if (const auto* seed = find(*sur, "seed")) {
            s.surrogate.seed = seed->get<std::uint64_t>();
        }
    }
    if (const auto* p = find(j, "pairwise_te")) {
        s.pairwise_te = p->get<bool>();
    }
    return s;
}

json to_json(const InfluenceReport& r)
{
    json agents = json::array();
    for (std::size_t i = 0; i < r.agents.size(); ++i) {
        const auto& a = r.agents[i];
        agents.push_back({{"agent_id", r.agent_ids.empty() ? i : r.agent_ids[i]},
                          {"apparent_bits", a.apparent_bits},
                          {"net_bits", a.net_bits},
                          {"net_null_threshold", a.net_null_threshold},
                          {"net_significant", a.net_significant}});
    }
    json edges = json::array();
    for (const auto& e : r.inferred_edges) {
        edges.push_back({e.from, e.to, e.weight});
    }
    return {{"kind", "influence_report"},
            {"note", "net_bits is an information-theoretic estimate of influence, not ground truth"},
            {"settings", to_json(r.settings)},
            {"n_agents", r.n_agents},
            {"samples", r.samples},
            {"agents", agents},
            {"te_bits", r.te},
            {"te_threshold_bits", r.te_threshold},
            {"inferred_edges", edges},
            {"sparse_data_warning", r.sparse_data_warning}};
}

InfluenceReport influence_report_from_json(const json& j)
{
    if (!j.is_object() || str(j, "kind", "", "") != "influence_report") {
        fail("/kind", "not an influence report");
    }
    InfluenceReport r;
    try {
        r.settings = influence_settings_from_json(j.at("settings"));
        r.n_agents = j.at("n_agents").get<std::size_t>();
        r.samples = j.at("samples").get<std::size_t>();
        for (const auto& a : j.at("agents")) {
            r.agent_ids.push_back(a.at("agent_id").get<std::size_t>());
            r.agents.push_back({a.at("apparent_bits").get<double>(), a.at("net_bits").get<double>(),
                                a.at("net_null_threshold").get<double>(), a.at("net_significant").get<bool>()});
        }
        r.te = j.at("te_bits").get<std::vector<std::vector<double>>>();
        r.te_threshold = j.at("te_threshold_bits").get<std::vector<std::vector<double>>>();
        for (const auto& e : j.at("inferred_edges")) {
            r.inferred_edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<double>()});
        }
        r.sparse_data_warning = j.at("sparse_data_warning").get<bool>();
    } catch (const json::exception& e) {
        fail("", std::string("malformed influence report: ") + e.what());
    }
    return r;
}

json to_json(const ObservationModel& m)
{
    return {{"position_noise_sigma", m.position_noise_sigma},
            {"heading_noise_sigma", m.heading_noise_sigma},
            {"stride", m.stride},
            {"hidden", m.hidden}};
}

json to_json(const LeadershipReport& r)
{
    json agents = json::array();
    for (const auto& a : r.agents) {
        json g = json::array();
        for (const auto& p : a.granularity) {
            g.push_back({{"k", p.k},
                         {"samples", p.samples},
                         {"net_bits", p.net_bits},
                         {"threshold", p.threshold},
                         {"detected", p.detected}});
        }
        json c = nullptr;
        if (a.consistency) {
            c = {{"fraction", a.consistency->fraction},
                 {"label", a.consistency->label},
                 {"window_starts", a.consistency->window_starts},
                 {"detected", a.consistency->detected}};
        }
        agents.push_back({{"agent_id", a.agent_id},
                          {"net_bits", a.net_bits},
                          {"apparent_bits", a.apparent_bits},
                          {"net_significant", a.net_significant},
                          {"inferred_reach", a.inferred_reach},
                          {"structural_reach", a.structural_reach ? json(*a.structural_reach) : json(nullptr)},
                          {"consistency", c},
                          {"granularity_profile", g},
                          {"hidden_flag", a.hidden_flag}});
    }
    const auto& o = r.options;
    return {{"kind", "leadership_report"},
            {"settings", to_json(r.settings)},
            {"axes",
             {{"distribution", "normalised entropy of net influence, 1 = distributed, 0 = centralised"},
              {"consistency", "fraction of windows passing the leader test"},
              {"granularity", "leader test after downsampling by k"},
              {"reach", "reachable agents / (n - 1)"},
              {"observability", "leader on intrinsic data but not on observed data"}}},
            {"thresholds",
             {{"leader_test", "net_bits above the surrogate quantile"},
              {"persistent", o.thresholds.persistent},
              {"ephemeral", o.thresholds.ephemeral}}},
            {"window", o.window},
            {"window_stride", o.window_stride},
            {"k_values", o.k_values},
            {"budget", o.budget},
            {"observation", to_json(o.observation)},
            {"distribution_index", r.distribution_index ? json(*r.distribution_index) : json(nullptr)},
            {"distribution_note", r.distribution_note},
            {"agents", agents}};
}

json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        const auto cut = what.find("parse error");
        throw std::invalid_argument(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                                    (cut == std::string::npos ? what : what.substr(cut)));
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

void write_trajectory_csv(std::ostream& out, const TrajectoryDataset& ds)
{
    out << "# dt=" << format_double(ds.dt) << "\n# speeds=";
    for (std::size_t i = 0; i < ds.n_agents; ++i) {
        out << (i ? ";" : "") << format_double(ds.frames.front()[i].speed);
    }
    out << "\nt,agent_id,x,y,vx,vy\n";
    for (std::size_t t = 0; t < ds.n_frames(); ++t) {
        const std::string time = format_double(static_cast<double>(t) * ds.dt);
        for (std::size_t i = 0; i < ds.n_agents; ++i) {
            const auto& a = ds.frames[t][i];
            out << time << ',' << ds.agent_ids[i] << ',' << format_double(a.position.x) << ','
                << format_double(a.position.y) << ',' << format_double(a.heading.x) << ','
                << format_double(a.heading.y) << '\n';
        }
    }
}

TrajectoryDataset read_trajectory_csv(std::istream& in)
{
    std::optional<double> dt;
    std::vector<double> speeds;
    std::vector<double> times;
    std::vector<std::size_t> ids;
    std::vector<Frame> frames;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    const auto where = [&] { return "trajectory line " + std::to_string(line_no) + ": "; };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            const auto body = trim(line.substr(1));
            try {
                if (body.rfind("dt=", 0) == 0) {
                    dt = parse_double(body.substr(3));
                } else if (body.rfind("speeds=", 0) == 0) {
                    speeds.clear();
                    for (const auto& s : split(body.substr(7), ';')) {
                        speeds.push_back(parse_double(trim(s)));
                    }
                }
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(where() + e.what());
            }
            continue;
        }
        if (!header) {
            if (line != "t,agent_id,x,y,vx,vy") {
                throw std::invalid_argument(where() + "expected header t,agent_id,x,y,vx,vy");
            }
            header = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 6) {
            throw std::invalid_argument(where() + "expected 6 columns, found " + std::to_string(cols.size()));
        }
        double t = 0.0;
        AgentState a;
        std::size_t id = 0;
        try {
            t = parse_double(cols[0]);
            const double idv = parse_double(cols[1]);
            if (idv < 0 || idv != std::floor(idv)) {
                throw std::invalid_argument("agent_id must be a non-negative integer");
            }
            id = static_cast<std::size_t>(idv);
            a.position = {parse_double(cols[2]), parse_double(cols[3])};
            a.heading = {parse_double(cols[4]), parse_double(cols[5])};
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where() + e.what());
        }
        if (times.empty() || t != times.back()) {
            if (!times.empty() && t < times.back()) {
                throw std::invalid_argument(where() + "time goes backwards");
            }
            if (!frames.empty() && frames.back().size() != ids.size()) {
                throw std::invalid_argument(where() + "previous frame has " + std::to_string(frames.back().size()) +
                                            " agents, expected " + std::to_string(ids.size()));
            }
            times.push_back(t);
            frames.emplace_back();
        }
        if (frames.size() == 1) {
            ids.push_back(id);
        } else if (frames.back().size() >= ids.size() || ids[frames.back().size()] != id) {
            throw std::invalid_argument(where() + "agent order differs from the first frame");
        }
        frames.back().push_back(a);
    }
    if (!header) {
        throw std::invalid_argument("trajectory: missing header");
    }
    if (frames.size() < 2) {
        throw InsufficientData("trajectory needs at least two frames");
    }
    if (frames.back().size() != ids.size()) {
        throw std::invalid_argument("trajectory: last frame is incomplete");
    }
    if (!speeds.empty() && speeds.size() != ids.size()) {
        throw std::invalid_argument("trajectory: speeds line does not match the agent count");
    }
    for (auto& f : frames) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i].speed = speeds.empty() ? 1.0 : speeds[i];
            if (!is_unit(f[i].heading, 1e-6)) {
                throw std::invalid_argument("trajectory: heading of agent " + std::to_string(ids[i]) +
                                            " is not a unit vector");
            }
        }
    }
    auto ds = make_dataset(dt ? *dt : times[1] - times[0], std::move(frames));
    ds.agent_ids = std::move(ids);
    return ds;
}

std::string config_hash(const json& j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const RunManifest& m)
{
    return {{"config_hash", m.config_hash},
            {"seed", m.seed},
            {"tool_version", m.tool_version},
            {"created", m.created},
            {"input", m.input},
            {"output", m.output},
            {"dt", m.dt},
            {"n_agents", m.n_agents},
            {"n_frames", m.n_frames}};
}

}  // namespace leadership
