#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "leadership/anatomy.hpp"
#include "leadership/errors.hpp"

using namespace leadership;

namespace {

// Agent 0 random-walks its heading; the others copy its heading from three
// frames back while `active(t)` holds, and random-walk on their own otherwise.
template <typename Active>
TrajectoryDataset scripted_leader(std::size_t n, std::size_t frames, std::uint64_t seed, Active active)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 0.3);
    std::normal_distribution<double> small(0.0, 0.05);
    std::vector<std::vector<double>> a(frames, std::vector<double>(n, 0.0));
    for (std::size_t t = 1; t < frames; ++t) {
        a[t][0] = a[t - 1][0] + z(rng);
        for (std::size_t i = 1; i < n; ++i) {
            a[t][i] = (active(t) && t >= 3) ? a[t - 3][0] + small(rng) : a[t - 1][i] + z(rng);
        }
    }
    std::vector<Frame> fr(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            fr[t].push_back({{static_cast<double>(t) * 0.1, 3.0 * static_cast<double>(i)}, from_angle(a[t][i]), 1.0});
        }
    }
    return make_dataset(0.1, std::move(fr));
}

TrajectoryDataset always_leader(std::size_t frames = 2000, std::uint64_t seed = 1)
{
    return scripted_leader(5, frames, seed, [](std::size_t) { return true; });
}

}  // namespace

TEST_CASE("observe examples")
{
    const auto ds = always_leader(1001);
    const auto same = observe(ds, ObservationModel{}, 3);
    CHECK(same.frames == ds.frames);
    CHECK(same.group == ds.group);
    CHECK(same.agent_ids == ds.agent_ids);
    CHECK(same.observed);

    ObservationModel hide;
    hide.hidden = {0};
    const auto three = scripted_leader(3, 20, 1, [](std::size_t) { return true; });
    const auto two = observe(three, hide, 1);
    CHECK(two.n_agents == 2);
    CHECK(two.agent_ids == std::vector<std::size_t>{1, 2});
    CHECK(two.frames[5][0] == three.frames[5][1]);

    ObservationModel stride;
    stride.stride = 10;
    const auto thin = observe(ds, stride, 1);
    REQUIRE(thin.n_frames() == 101);
    CHECK(thin.frames[100] == ds.frames[1000]);

    hide.hidden = {0, 1, 2};
    CHECK_THROWS_AS(observe(three, hide, 1), std::invalid_argument);
    hide.hidden = {7};
    CHECK_THROWS_AS(observe(three, hide, 1), std::invalid_argument);

    ObservationModel noisy;
    noisy.position_noise_sigma = 0.5;
    noisy.heading_noise_sigma = 0.2;
    const auto n1 = observe(ds, noisy, 9);
    const auto n2 = observe(ds, noisy, 9);
    CHECK(n1.frames == n2.frames);
    CHECK_NOTHROW(n1.validate());
    for (const auto& a : n1.frames[10]) {
        CHECK(is_unit(a.heading));
    }
}

TEST_CASE("distribution index")
{
    const std::vector<double> equal(8, 0.3);
    CHECK(*distribution_index(equal) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> one{0.0, 2.0, 0.0, 0.0};
    CHECK(*distribution_index(one) == 0.0);
    const std::vector<double> mixed{2.0, 1.0, 1.0};
    CHECK(*distribution_index(mixed) == doctest::Approx(1.5 / std::log2(3.0)).epsilon(1e-12));
    CHECK(*distribution_index(mixed) == doctest::Approx(0.946).epsilon(1e-3));
    const std::vector<double> zero(4, 0.0);
    CHECK_FALSE(distribution_index(zero).has_value());

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> s(2 + rep % 9);
        for (auto& v : s) {
            v = u(rng);
        }
        const double d = *distribution_index(s);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0 + 1e-12);
        auto scaled = s;
        for (auto& v : scaled) {
            v *= 17.5;
        }
        CHECK(*distribution_index(scaled) == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("temporal labels")
{
    CHECK(temporal_label(1.0) == "persistent");
    CHECK(temporal_label(0.5) == "intermittent");
    CHECK(temporal_label(0.1) == "ephemeral");
    CHECK(temporal_label(0.2) == "intermittent");
}

TEST_CASE("consistency of scripted leaders")
{
    auto s = leader_test_settings();
    s.surrogate.seed = 1;

    const auto always = always_leader(5000);
    const auto all = consistency(always, 0, 500, 500, s);
    CHECK(all.fraction == 1.0);
    CHECK(all.label == "persistent");
    CHECK(all.window_starts.size() == 10);

    // Active in the fourth of ten windows only.
    const auto once = scripted_leader(5, 5000, 2, [](std::size_t t) { return t >= 1500 && t < 2000; });
    const auto c = consistency(once, 0, 500, 500, s);
    CHECK(c.fraction == doctest::Approx(0.1));
    CHECK(c.label == "ephemeral");
    CHECK(c.detected[3]);

    const auto c3 = consistency(always, 3, 500, 500, s);
    CHECK(c3.fraction <= 0.2);

    CHECK_THROWS_AS(consistency(always, 0, 3, 3, s), InsufficientData);
    CHECK_THROWS_AS(consistency(always, 0, 6000, 500, s), std::invalid_argument);
}

TEST_CASE("consistency is monotone in the threshold")
{
    const auto ds = scripted_leader(5, 3000, 4, [](std::size_t t) { return (t / 300) % 3 == 0; });
    auto s = leader_test_settings();
    double last = -1.0;
    for (const double q : {0.99, 0.95, 0.8, 0.5, 0.2, 0.0}) {
        s.surrogate.quantile = q;
        const double f = consistency(ds, 0, 300, 300, s).fraction;
        CHECK(f >= last);
        last = f;
    }
}

TEST_CASE("granularity at k = 1 equals the plain leader test")
{
    const auto ds = always_leader(1500, 6);
    const auto s = leader_test_settings();
    const std::vector<std::size_t> ks{1, 2, 1000};
    for (std::size_t a = 0; a < 5; ++a) {
        const auto prof = granularity_sweep(ds, a, ks, s);
        REQUIRE(prof.size() == 3);
        CHECK(prof[0].detected == leader_test(ds, a, s));
        CHECK(prof[0].samples == 1500);
        CHECK_FALSE(prof[2].detected);
    }
    CHECK(granularity_sweep(ds, 0, ks, s)[0].detected);
    CHECK(downsample(ds, 10, 40).n_frames() == 40);
    CHECK(downsample(ds, 10).n_frames() == 150);
}

TEST_CASE("target test is gated by net influence")
{
    // A group marching straight into the region, headings constant: the
    // equal-count symbols are all zero so no agent has any net influence.
    std::vector<Frame> fr;
    for (int t = 0; t < 400; ++t) {
        Frame f;
        for (int i = 0; i < 4; ++i) {
            f.push_back({{0.1 * t, static_cast<double>(i)}, {1.0, 0.0}, 1.0});
        }
        fr.push_back(f);
    }
    const auto ds = make_dataset(0.1, std::move(fr));
    const TargetRegion region{{40.0, 1.5}, 5.0};
    CHECK(distance_to(region, {40.0, 1.5}) == 0.0);
    CHECK(distance_to(region, {50.0, 1.5}) == doctest::Approx(5.0));
    const auto r = target_driven_test(ds, 0, region, 5.0, 399, leader_test_settings());
    CHECK(r.converged);
    CHECK(r.trending);
    CHECK_FALSE(r.influential);
    CHECK_FALSE(r.passed);
}

TEST_CASE("hidden leader flag")
{
    const auto ds = always_leader(2000, 3);
    auto s = leader_test_settings();
    s.pairwise_te = false;
    const auto intrinsic = influence_scores(ds, s);
    REQUIRE(intrinsic.agents[0].net_significant);

    const auto same = influence_scores(observe(ds, ObservationModel{}, 1), s);
    for (std::size_t a = 0; a < 5; ++a) {
        CHECK_FALSE(hidden_leader_flag(intrinsic, same, a));
    }

    ObservationModel hide;
    hide.hidden = {0};
    const auto without = influence_scores(observe(ds, hide, 1), s);
    CHECK(hidden_leader_flag(intrinsic, without, 0));

    auto other = s;
    other.bins = 4;
    CHECK_THROWS_AS(hidden_leader_flag(intrinsic, influence_scores(ds, other), 0), std::invalid_argument);
}

TEST_CASE("classify rejects mismatched reports")
{
    const auto ds = always_leader(600, 3);
    auto s = leader_test_settings();
    s.pairwise_te = false;
    const auto rep = influence_scores(ds, s);
    ClassifyOptions opt;
    opt.window = 300;
    opt.window_stride = 300;
    opt.k_values = {1, 2};
    const auto out = classify(ds, rep, opt);
    REQUIRE(out.agents.size() == 5);
    for (const auto& a : out.agents) {
        REQUIRE(a.consistency);
        CHECK(a.consistency->fraction >= 0.0);
        CHECK(a.consistency->fraction <= 1.0);
        CHECK_FALSE(a.hidden_flag);
    }
    if (out.distribution_index) {
        CHECK(*out.distribution_index >= 0.0);
        CHECK(*out.distribution_index <= 1.0);
    }

    const auto smaller = scripted_leader(3, 600, 1, [](std::size_t) { return true; });
    CHECK_THROWS_AS(classify(smaller, rep, opt), InputMismatch);
}
