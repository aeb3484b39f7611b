#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "leadership/errors.hpp"
#include "leadership/zonal.hpp"

using namespace leadership;

namespace {

constexpr double pi = std::numbers::pi;
const double h = std::sqrt(2.0) / 2.0;

AgentState agent(double x, double y, double angle = 0.0) { return {{x, y}, from_angle(angle), 1.0}; }

bool close(const Vec2& a, const Vec2& b, double tol = 1e-12) { return (a - b).norm() <= tol; }

AgentParams radii(double r, double o, double a)
{
    AgentParams p;
    p.r_repulsion = r;
    p.r_orientation = o;
    p.r_attraction = a;
    return p;
}

}  // namespace

TEST_CASE("perceive annuli")
{
    const auto p = radii(1, 2, 3);
    const Frame f{agent(0, 0), agent(0.5, 0), agent(1.5, 0), agent(2.5, 0), agent(3.0, 0)};
    CHECK(perceive(0, f, Zone::repulsion, p) == std::vector<std::size_t>{1});
    CHECK(perceive(0, f, Zone::orientation, p) == std::vector<std::size_t>{2});
    CHECK(perceive(0, f, Zone::attraction, p) == std::vector<std::size_t>{3});

    // Boundaries are half-open: r_rep itself belongs to the orientation zone.
    const Frame g{agent(0, 0), agent(1.0, 0)};
    CHECK(perceive(0, g, Zone::repulsion, p).empty());
    CHECK(perceive(0, g, Zone::orientation, p) == std::vector<std::size_t>{1});
}

TEST_CASE("blind wedge")
{
    auto p = radii(1, 6, 14);
    p.blind_angle = pi;
    // Repulsion ignores the wedge.
    const Frame close_behind{agent(0, 0), agent(-0.5, 0)};
    CHECK(perceive(0, close_behind, Zone::repulsion, p) == std::vector<std::size_t>{1});

    p.blind_angle = pi / 2;
    const Frame behind{agent(0, 0), agent(-10, 0)};
    CHECK(perceive(0, behind, Zone::attraction, p).empty());
    p.blind_angle = 0.0;
    CHECK(perceive(0, behind, Zone::attraction, p) == std::vector<std::size_t>{1});

    // Two agents in file, both heading +x: the rear one sees the front one only.
    p.blind_angle = pi;
    const Frame file{agent(0, 0), agent(3, 0)};
    CHECK(perceive(0, file, Zone::orientation, p) == std::vector<std::size_t>{1});
    CHECK(perceive(1, file, Zone::orientation, p).empty());
}

TEST_CASE("repulsion direction")
{
    const Frame f{agent(0, 0), agent(1, 0), agent(-1, 0), agent(0, 2), agent(0, 0)};
    const std::vector<std::size_t> east{1};
    CHECK(close(repulsion_direction(0, east, f), {-1, 0}));
    const std::vector<std::size_t> both{1, 2};
    CHECK(close(repulsion_direction(0, both, f), {0, 0}));
    const std::vector<std::size_t> two{1, 3};
    CHECK(close(repulsion_direction(0, two, f), {-1, -1}));
    const std::vector<std::size_t> coincident{4};
    CHECK(close(repulsion_direction(0, coincident, f), {0, 0}));
}

TEST_CASE("social direction")
{
    const Frame f{agent(0, 0), agent(0, 3), agent(1, 0), agent(5, 5, pi / 2)};
    std::vector<double> ones(4, 1.0);
    const std::vector<std::size_t> none;
    const std::vector<std::size_t> north{1};
    const std::vector<std::size_t> orient{3};
    CHECK(close(social_direction(0, none, north, f, ones, 1.0), {0, 1}));
    CHECK(close(social_direction(0, orient, none, f, ones, 0.0), {0, 1}));

    std::vector<double> row{0.0, 0.0, 2.0, 1.0};
    const std::vector<std::size_t> east{2};
    CHECK(close(social_direction(0, orient, east, f, row, 0.5), {1.0, 0.5}));

    // Zero sociality silences a neighbour.
    row[2] = 0.0;
    CHECK(close(social_direction(0, none, east, f, row, 1.0), {0, 0}));
}

TEST_CASE("informed blend")
{
    CHECK(close(informed_blend({0.6, 0.8}, 0.0, {1, 0}), {0.6, 0.8}));
    CHECK(close(informed_blend({0, 1}, 7.0, {0, 1}), {0, 1}));
    CHECK(close(informed_blend({1, 0}, 1.0, {0, 1}), {h, h}));
    CHECK(close(informed_blend({1, 0}, 1.0, {-1, 0}), {1, 0}));
}

TEST_CASE("perturb heading")
{
    Rng rng(9);
    const Rng before = rng;
    CHECK(perturb_heading({1, 0}, 0.0, rng) == Vec2{1, 0});
    CHECK(rng == before);

    Rng a(123);
    Rng b(123);
    CHECK(perturb_heading({0, 1}, 0.2, a) == perturb_heading({0, 1}, 0.2, b));

    Rng mc(20240501);
    double s = 0.0;
    double c = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const auto v = perturb_heading({1, 0}, 0.1, mc);
        CHECK(is_unit(v));
        s += v.y;
        c += v.x;
    }
    CHECK(std::abs(std::atan2(s, c)) <= 3.0 * 0.1 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("rotate towards")
{
    CHECK(close(rotate_towards({1, 0}, {0, 1}, pi), {0, 1}));
    CHECK(close(rotate_towards({1, 0}, {0, 1}, pi / 4), {h, h}));
    CHECK(close(rotate_towards({1, 0}, {-1, 0}, pi / 2), {0, 1}));
    CHECK(close(rotate_towards({1, 0}, {0, -1}, pi / 4), {h, -h}));
    CHECK(close(rotate_towards({1, 0}, {0, 1}, 0.0), {1, 0}));
}

TEST_CASE("step examples")
{
    AgentParams p;
    p.noise_sigma = 0.0;
    p.speed = 2.0;
    RunConfig cfg = default_config(1, 10, 1, p);
    cfg.dt = 0.5;
    const Frame one{{{3, 4}, {1, 0}, 2.0}};
    Rng rng(1);
    const auto next = step(one, cfg, 0, rng);
    CHECK(close(next[0].position, {4, 4}));

    // Mutual repulsion pushes apart.
    p.speed = 1.0;
    cfg = default_config(2, 10, 1, p);
    const Frame near{agent(0, 0, pi / 2), agent(0.5, 0, pi / 2)};
    const auto apart = step(near, cfg, 0, rng);
    CHECK((apart[1].position - apart[0].position).norm() > 0.5);

    // Orientation only: the heading gap never grows.
    p.alpha = 0.0;
    cfg = default_config(2, 10, 1, p);
    Frame f{agent(0, 0, 0.0), agent(0, 3, 1.2)};
    double gap = angle_between(f[0].heading, f[1].heading);
    for (std::size_t t = 0; t < 30; ++t) {
        f = step(f, cfg, t, rng);
        const double g = angle_between(f[0].heading, f[1].heading);
        CHECK(g <= gap + 1e-12);
        gap = g;
    }
}

TEST_CASE("simulate examples")
{
    AgentParams p;
    p.noise_sigma = 0.0;
    const auto line = simulate(default_config(1, 100, 42, p));
    REQUIRE(line.n_frames() == 101);
    const Vec2 v = line.frames[0][0].heading;
    for (std::size_t t = 0; t < line.n_frames(); ++t) {
        CHECK(close(line.frames[t][0].position, line.frames[0][0].position + v * (0.1 * static_cast<double>(t)), 1e-9));
    }

    const auto cfg = default_config(12, 200, 7);
    const auto a = simulate(cfg);
    const auto b = simulate(cfg);
    CHECK(a.frames == b.frames);
    CHECK(a.group == b.group);

    const auto flock = simulate(default_config(30, 2000, 3));
    CHECK(flock.group.back().polarization > 0.9);
}

TEST_CASE("pipeline invariants on random runs")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        AgentParams p;
        p.blind_angle = 0.3 * static_cast<double>(seed);
        p.noise_sigma = 0.2;
        auto cfg = default_config(15, 150, seed, p);
        cfg.params[0].omega = 1.0;
        cfg.params[0].preferred_direction = Vec2{0, 1};
        const auto ds = simulate(cfg);
        const double limit = p.max_turn * cfg.dt + 1e-9;
        for (std::size_t t = 0; t + 1 < ds.n_frames(); ++t) {
            for (std::size_t i = 0; i < 15; ++i) {
                CHECK(is_unit(ds.frames[t + 1][i].heading));
                CHECK(angle_between(ds.frames[t][i].heading, ds.frames[t + 1][i].heading) <= limit);
            }
        }
        // Blind wedge never suppresses repulsion.
        for (const auto& fr : ds.frames) {
            for (std::size_t i = 0; i < fr.size(); ++i) {
                const auto rep = perceive(i, fr, Zone::repulsion, p);
                for (std::size_t j = 0; j < fr.size(); ++j) {
                    if (j != i && (fr[j].position - fr[i].position).norm() < p.r_repulsion) {
                        CHECK(std::find(rep.begin(), rep.end(), j) != rep.end());
                    }
                }
            }
        }
    }
}

TEST_CASE("zero noise runs ignore the stream")
{
    AgentParams p;
    p.noise_sigma = 0.0;
    const auto cfg = default_config(8, 40, 5, p);
    Rng init(5);
    const Frame f0 = initial_frame(cfg, init);
    Rng r1(1);
    Rng r2(999);
    Frame a = f0;
    Frame b = f0;
    for (std::size_t t = 0; t < 40; ++t) {
        a = step(a, cfg, t, r1);
        b = step(b, cfg, t, r2);
    }
    CHECK(a == b);
}

TEST_CASE("config validation")
{
    auto cfg = default_config(3, 10, 1);
    CHECK_NOTHROW(cfg.validate());
    cfg.params[1].r_orientation = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = default_config(3, 10, 1);
    cfg.params[0].omega = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = default_config(3, 10, 1);
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("goal points re-aim the preferred direction")
{
    AgentParams p;
    p.noise_sigma = 0.0;
    p.omega = 100.0;
    p.goal = Vec2{0, -10};
    p.max_turn = 100.0;
    auto cfg = default_config(1, 1, 1, p);
    Rng rng(1);
    // Goal straight below: heading swings to (0, -1) up to the small social-free blend.
    const Frame f{agent(0, 0, 0.0)};
    const auto next = step(f, cfg, 0, rng);
    CHECK(next[0].heading.y < -0.99);

    // A scheduled direction overrides the goal.
    cfg.informed_schedules = {{0, {{0.0, cfg.horizon(), 100.0, Vec2{0, 1}}}}};
    const auto s = informed_state(cfg, 0, 0.0);
    CHECK(s.scheduled_direction);
    CHECK(step(f, cfg, 0, rng)[0].heading.y > 0.99);
}
