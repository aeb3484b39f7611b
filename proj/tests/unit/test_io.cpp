#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "leadership/errors.hpp"
#include "leadership/io.hpp"

using namespace leadership;

TEST_CASE("trajectory csv round trip is bit-exact")
{
    ScenarioOptions o;
    o.n_steps = 60;
    o.seed = 8;
    auto spec = make_informed(7, 0.3, 0.7, from_angle(1.1), o);
    spec.config.params[2].speed = 1.3;
    const auto ds = simulate(spec);
    std::stringstream buf;
    write_trajectory_csv(buf, ds);
    const auto back = read_trajectory_csv(buf);
    CHECK(back.dt == ds.dt);
    CHECK(back.n_agents == ds.n_agents);
    CHECK(back.frames == ds.frames);
    CHECK(back.group == ds.group);
    CHECK(back.agent_ids == ds.agent_ids);
}

TEST_CASE("trajectory csv without comment lines")
{
    // dt falls back to the spacing of the first two time stamps, speeds to 1.
    std::istringstream in("t,agent_id,x,y,vx,vy\n0,0,0,0,1,0\n0.25,0,0.25,0,1,0\n");
    const auto ds = read_trajectory_csv(in);
    CHECK(ds.dt == 0.25);
    CHECK(ds.frames[1][0].speed == 1.0);
}

TEST_CASE("trajectory csv errors")
{
    const auto fails = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_trajectory_csv(in), std::invalid_argument);
    };
    fails("# dt=0.1\nt,agent_id,x,y,vx,vy\n0,0,0,zero,1,0\n1,0,0,0,1,0\n");
    fails("# dt=0.1\nt,id,x,y\n0,0,0,0\n");
    fails("# dt=0.1\nt,agent_id,x,y,vx,vy\n0,0,0,0,1,0\n0,1,0,0,1,0\n1,0,0,0,1,0\n");
    fails("# dt=0.1\nt,agent_id,x,y,vx,vy\n0,0,0,0,2,0\n1,0,0,0,1,0\n");
    std::istringstream one("# dt=0.1\nt,agent_id,x,y,vx,vy\n0,0,0,0,1,0\n");
    CHECK_THROWS_AS(read_trajectory_csv(one), InsufficientData);
}

TEST_CASE("scenario json round trip")
{
    ScenarioOptions o;
    o.n_steps = 300;
    const auto base = make_hierarchy("fig1", o);
    Schedules s;
    s.informed = {{3, {{0.0, 10.0, 0.0, std::nullopt}, {10.0, base.config.horizon(), 1.5, Vec2{0, 1}}}}};
    const auto specs = {base, make_scheduled(base, s), make_shepherd(4, 2.0, {10, 10}, 5.0, o),
                        make_emergent(5, 2.0, o), make_chain(3, 0.2, o)};
    for (const auto& spec : specs) {
        const auto j = to_json(spec);
        const auto back = scenario_from_json(j);
        CHECK(back == spec);
        CHECK(to_json(back) == j);
        // Text round trip too.
        CHECK(scenario_from_json(parse_json_text(j.dump(), "mem")) == spec);
    }
}

TEST_CASE("scenario json forms")
{
    const auto j = parse_json_text(R"({
        "name": "tiny",
        "config": {"n_agents": 3, "dt": 0.1, "n_steps": 20, "seed": 4,
                   "params": {"noise_sigma": 0.0},
                   "overrides": [{"agent": 1, "omega": 1.0, "preferred_direction": [0, 1]}],
                   "sociality": {"n": 3, "edges": [[1, 0, 1.0], [2, 1, 0.5]]}}
    })", "mem");
    const auto s = scenario_from_json(j);
    CHECK(s.config.params[1].omega == 1.0);
    CHECK(s.config.params[0].omega == 0.0);
    CHECK(s.config.sociality.at(0.0)(1, 2) == 0.5);
    REQUIRE(s.truth.informed.size() == 1);
    CHECK(s.truth.informed[0].agent == 1);
}

TEST_CASE("json errors name the path")
{
    auto j = to_json(make_chain(3, 0.5));
    j["config"]["dt"] = "fast";
    CHECK_THROWS_WITH_AS(scenario_from_json(j), doctest::Contains("/config/dt"), std::invalid_argument);

    auto k = to_json(make_chain(3, 0.5));
    k["truth"]["emergent"] = true;
    CHECK_THROWS_AS(scenario_from_json(k), std::invalid_argument);

    CHECK_THROWS_WITH_AS(parse_json_text("{\n  \"a\": ,\n}", "x.json"), doctest::Contains("x.json:2:"),
                         std::invalid_argument);
}

TEST_CASE("influence report json round trip")
{
    ScenarioOptions o;
    o.n_steps = 400;
    const auto ds = simulate(make_chain(3, 0.5, o));
    InfluenceSettings st;
    st.surrogate.shifts = 5;
    st.scope = GroupScope::rest;
    const auto r = influence_scores(ds, st);
    const auto back = influence_report_from_json(to_json(r));
    CHECK(back.settings == r.settings);
    CHECK(back.te == r.te);
    CHECK(back.inferred_edges == r.inferred_edges);
    CHECK(back.agent_ids == r.agent_ids);
    REQUIRE(back.agents.size() == r.agents.size());
    for (std::size_t i = 0; i < r.agents.size(); ++i) {
        CHECK(back.agents[i].net_bits == r.agents[i].net_bits);
    }
    CHECK(influence_settings_from_json(to_json(st)) == st);

    // No field of the report calls an agent a leader.
    const auto dump = to_json(r).dump();
    CHECK(dump.find("\"leader") == std::string::npos);
}

TEST_CASE("config hash")
{
    const auto a = to_json(make_chain(3, 0.5));
    CHECK(config_hash(a) == config_hash(to_json(make_chain(3, 0.5))));
    CHECK(config_hash(a) != config_hash(to_json(make_chain(4, 0.5))));
    CHECK(config_hash(a).size() == 16);
    // 64-bit FNV-1a of the two bytes "{}".
    CHECK(config_hash(json::object()) == "08f44b07b5901a25");
}
