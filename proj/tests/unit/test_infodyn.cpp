#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "leadership/errors.hpp"
#include "leadership/infodyn.hpp"
#include "leadership/zonal.hpp"

using namespace leadership;

namespace {

constexpr double exact = 1e-12;

SymbolSeries series(std::size_t alphabet, std::vector<std::uint32_t> s) { return {alphabet, std::move(s)}; }

SymbolSeries fair_bits(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    SymbolSeries s{2, std::vector<std::uint32_t>(n)};
    for (auto& v : s.symbols) {
        v = static_cast<std::uint32_t>(rng() & 1U);
    }
    return s;
}

// Every (x, z) pair of fair bits once, with y = x xor z.
void xor_table(SymbolSeries& x, SymbolSeries& y, SymbolSeries& z)
{
    x = series(2, {0, 0, 1, 1});
    z = series(2, {0, 1, 0, 1});
    y = series(2, {0, 1, 1, 0});
}

SymbolSeries relabel(const SymbolSeries& s, const std::vector<std::uint32_t>& perm)
{
    SymbolSeries out = s;
    for (auto& v : out.symbols) {
        v = perm[v];
    }
    return out;
}

}  // namespace

TEST_CASE("discretize examples")
{
    const std::vector<double> v{0.0, 0.5, 1.0};
    CHECK(discretize(v, 2, Binning::equal_width).symbols == std::vector<std::uint32_t>{0, 1, 1});

    const std::vector<double> angle{std::numbers::pi};
    CHECK(discretize_angles(angle, 4).symbols == std::vector<std::uint32_t>{2});
    const std::vector<double> quadrants{0.1, 1.7, -0.1, -1.7};
    CHECK(discretize_angles(quadrants, 4).symbols == std::vector<std::uint32_t>{0, 1, 3, 2});

    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    std::vector<double> g(1000);
    for (auto& x : g) {
        x = z(rng);
    }
    const auto s = discretize(g, 8, Binning::equal_count);
    std::vector<int> counts(8, 0);
    for (const auto c : s.symbols) {
        ++counts[c];
    }
    CHECK(counts == std::vector<int>(8, 125));

    const std::vector<double> flat(50, 3.0);
    CHECK(discretize(flat, 4, Binning::equal_count).symbols == std::vector<std::uint32_t>(50, 0));
    CHECK_THROWS_AS(discretize(v, 1, Binning::equal_width), std::invalid_argument);
}

TEST_CASE("discretize is monotone")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<double> x(300);
    for (auto& v : x) {
        v = u(rng);
    }
    for (const auto method : {Binning::equal_width, Binning::equal_count}) {
        const auto s = discretize(x, 7, method);
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (std::size_t b = 0; b < x.size(); ++b) {
                if (x[a] < x[b]) {
                    CHECK(s.symbols[a] <= s.symbols[b]);
                }
            }
        }
    }
}

TEST_CASE("entropy examples")
{
    CHECK(entropy(series(3, {1, 1, 1, 1})) == 0.0);
    CHECK(entropy(series(4, {0, 1, 2, 3})) == doctest::Approx(2.0).epsilon(exact));
    CHECK(entropy(series(3, {0, 0, 1, 2})) == doctest::Approx(1.5).epsilon(exact));
    for (std::size_t m = 2; m <= 64; m *= 2) {
        SymbolSeries s{m, {}};
        for (std::uint32_t k = 0; k < m; ++k) {
            s.symbols.push_back(k);
        }
        CHECK(std::abs(entropy(s) - std::log2(static_cast<double>(m))) < exact);
    }
}

TEST_CASE("mutual information examples")
{
    const auto x = series(2, {0, 0, 1, 1});
    const auto y = series(2, {0, 1, 0, 1});
    CHECK(std::abs(mutual_information(x, y)) < exact);
    CHECK(std::abs(mutual_information(x, x) - 1.0) < exact);
    CHECK_THROWS_AS(mutual_information(x, series(2, {0, 1})), InputMismatch);

    std::mt19937_64 rng(20240501);
    std::normal_distribution<double> z;
    std::vector<double> a(100000);
    std::vector<double> b(100000);
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = z(rng);
        b[k] = 0.5 * a[k] + std::sqrt(0.75) * z(rng);
    }
    const double mi = mutual_information(discretize(a, 16, Binning::equal_count), discretize(b, 16, Binning::equal_count));
    CHECK(std::abs(mi - (-0.5 * std::log2(0.75))) < 0.02);
}

TEST_CASE("conditional mutual information examples")
{
    SymbolSeries x;
    SymbolSeries y;
    SymbolSeries z;
    xor_table(x, y, z);
    const std::vector<SymbolSeries> zs{z};
    CHECK(std::abs(mutual_information(x, y)) < exact);
    CHECK(std::abs(conditional_mutual_information(x, y, zs) - 1.0) < exact);

    // Noise conditioning leaves a copy at 1 bit.
    const std::vector<SymbolSeries> noise{z};
    CHECK(std::abs(conditional_mutual_information(x, x, noise) - 1.0) < exact);

    const std::vector<SymbolSeries> same{x};
    CHECK(std::abs(conditional_mutual_information(x, x, same)) < exact);

    const std::vector<SymbolSeries> none;
    CHECK(conditional_mutual_information(x, y, none) == mutual_information(x, y));
}

TEST_CASE("histogram identities")
{
    // p(x, y, z) from the xor table, built directly as counts.
    JointHistogram h({2, 2, 2});
    for (std::uint32_t a = 0; a < 2; ++a) {
        for (std::uint32_t c = 0; c < 2; ++c) {
            h.add({a, a ^ c, c}, 3);
        }
    }
    CHECK(h.total() == 12);
    const std::vector<std::size_t> vx{0};
    const std::vector<std::size_t> vy{1};
    const std::vector<std::size_t> vz{2};
    CHECK(std::abs(mutual_information(h, vx, vy)) < exact);
    CHECK(std::abs(conditional_mutual_information(h, vx, vy, vz) - 1.0) < exact);
    CHECK(std::abs(conditional_mutual_information(h, vy, vx, vz) - 1.0) < exact);
    const std::vector<std::size_t> xy{0, 1};
    CHECK(h.marginal(xy).total() == 12);
    CHECK(std::abs(entropy(h) - 2.0) < exact);
}

TEST_CASE("copy process on its exact joint")
{
    // Coordinates (target now, source past, target past), target now = source past.
    JointHistogram h({2, 2, 2});
    for (std::uint32_t sp = 0; sp < 2; ++sp) {
        for (std::uint32_t tp = 0; tp < 2; ++tp) {
            h.add({sp, sp, tp});
        }
    }
    const std::vector<std::size_t> now{0};
    const std::vector<std::size_t> src{1};
    const std::vector<std::size_t> past{2};
    CHECK(std::abs(conditional_mutual_information(h, now, src, past) - 1.0) < exact);

    // Reverse direction: source now is independent of the target's past given its own.
    JointHistogram r({2, 2, 2});
    for (std::uint32_t a = 0; a < 2; ++a) {
        for (std::uint32_t b = 0; b < 2; ++b) {
            for (std::uint32_t c = 0; c < 2; ++c) {
                r.add({a, b, c});
            }
        }
    }
    CHECK(std::abs(conditional_mutual_information(r, now, src, past)) < exact);
}

TEST_CASE("estimators are symmetric and relabel-invariant")
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::uint32_t> sym(0, 3);
    for (int rep = 0; rep < 20; ++rep) {
        SymbolSeries x{4, {}};
        SymbolSeries y{4, {}};
        SymbolSeries z{4, {}};
        for (int t = 0; t < 400; ++t) {
            x.symbols.push_back(sym(rng));
            y.symbols.push_back((x.symbols.back() + (sym(rng) == 0 ? 1U : 0U)) % 4);
            z.symbols.push_back(sym(rng));
        }
        const std::vector<SymbolSeries> zs{z};
        CHECK(mutual_information(x, y) == doctest::Approx(mutual_information(y, x)).epsilon(exact));
        CHECK(conditional_mutual_information(x, y, zs) ==
              doctest::Approx(conditional_mutual_information(y, x, zs)).epsilon(exact));
        CHECK(mutual_information(x, y) >= 0.0);

        const std::vector<std::uint32_t> perm{2, 0, 3, 1};
        const std::vector<SymbolSeries> pz{relabel(z, perm)};
        CHECK(mutual_information(relabel(x, perm), y) == doctest::Approx(mutual_information(x, y)).epsilon(exact));
        CHECK(conditional_mutual_information(x, relabel(y, perm), pz) ==
              doctest::Approx(conditional_mutual_information(x, y, zs)).epsilon(exact));
    }
}

TEST_CASE("transfer entropy examples")
{
    // Exact copy process: the 8-cell joint (target past, source past, target now)
    // has each (source past, target past) pair once per target value.
    SymbolSeries src = series(2, {0, 0, 1, 1, 0, 1, 0, 1, 1, 0});
    SymbolSeries dst = series(2, {0, 0, 0, 1, 1, 0, 1, 0, 1, 1});
    // dst(t + 1) = src(t); over t = 1..9 each (src(t-1), dst(t-1)) cell appears evenly.
    const EmbeddingSpec one{1, 1};
    const double te = transfer_entropy(src, dst, one);
    CHECK(te > 0.5);
    CHECK(std::abs(transfer_entropy(dst, src, one)) < te);

    const auto a = fair_bits(100001, 1);
    SymbolSeries copy{2, std::vector<std::uint32_t>(a.size())};
    for (std::size_t t = 1; t < a.size(); ++t) {
        copy.symbols[t] = a.symbols[t - 1];
    }
    CHECK(std::abs(transfer_entropy(a, copy, one) - 1.0) < 0.01);
    CHECK(std::abs(transfer_entropy(copy, a, one)) < 0.02);

    const auto b = fair_bits(100000, 2);
    const auto c = fair_bits(100000, 3);
    CHECK(std::abs(transfer_entropy(b, c, one)) < 0.02);

    CHECK_THROWS_AS(transfer_entropy(series(2, {0, 1}), series(2, {1, 0}), EmbeddingSpec{2, 1}), InsufficientData);
    CHECK_THROWS_AS(transfer_entropy(b, series(2, {0, 1}), one), InputMismatch);
}

TEST_CASE("embedding series alignment")
{
    const auto s = series(4, {0, 1, 2, 3, 0, 1});
    const EmbeddingSpec spec{2, 1};
    CHECK(history_series(s, spec).size() == 4);
    CHECK(present_series(s, spec).symbols == std::vector<std::uint32_t>{2, 3, 0, 1});
    CHECK(history_series(s, spec).symbols == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("lagged direction correlation")
{
    std::vector<Vec2> vi;
    for (int t = 0; t < 200; ++t) {
        vi.push_back(from_angle(0.05 * t + std::sin(0.03 * t)));
    }
    CHECK(lagged_direction_correlation(vi, vi, 5).best_lag == 0);

    std::vector<Vec2> vj(vi.size());
    for (std::size_t t = 0; t < vi.size(); ++t) {
        vj[t] = vi[t >= 3 ? t - 3 : 0];
    }
    const auto c = lagged_direction_correlation(vi, vj, 6);
    CHECK(c.best_lag == 3);
    CHECK(c.profile.size() == 13);

    const std::vector<Vec2> flat(50, Vec2{1, 0});
    const auto f = lagged_direction_correlation(flat, flat, 4);
    CHECK(f.best_lag == 0);
    for (const auto v : f.profile) {
        CHECK(v == doctest::Approx(1.0));
    }
}

TEST_CASE("quantile and surrogate offsets")
{
    CHECK(quantile({1, 2, 3, 4, 5}, 0.5) == 3.0);
    CHECK(quantile({1, 2}, 0.25) == doctest::Approx(1.25));
    const auto offs = surrogate_offsets(1000, SurrogateSettings{}, 7);
    CHECK(offs.size() == 20);
    for (const auto o : offs) {
        CHECK(o >= 100);
        CHECK(o <= 900);
    }
    CHECK(offs == surrogate_offsets(1000, SurrogateSettings{}, 7));
    CHECK(circular_shift(series(3, {0, 1, 2}), 1).symbols == std::vector<std::uint32_t>{1, 2, 0});
}

TEST_CASE("influence on a copying pair")
{
    // Agent 0 goes straight with noise; agent 1 copies agent 0's last heading.
    Rng rng(5);
    std::normal_distribution<double> z(0.0, 0.3);
    std::vector<Frame> frames;
    double a0 = 0.0;
    double a1 = 0.0;
    for (int t = 0; t < 3000; ++t) {
        frames.push_back({{{0.0, 0.0}, from_angle(a0), 1.0}, {{0.0, 20.0}, from_angle(a1), 1.0}});
        a1 = a0;
        a0 += z(rng);
    }
    InfluenceSettings s;
    s.surrogate.shifts = 0;
    const auto rep = influence_scores(make_dataset(0.1, frames), s);
    CHECK(rep.te[0][1] > rep.te[1][0]);
    CHECK(rep.te[0][1] > 0.5);
}

TEST_CASE("mutually invisible agents share no transfer entropy")
{
    AgentParams p;
    p.r_repulsion = 0.01;
    p.r_orientation = 0.02;
    p.r_attraction = 0.03;
    p.noise_sigma = 0.3;
    auto cfg = default_config(4, 20000, 3, p);
    cfg.initial.disc_radius = 500.0;
    InfluenceSettings s;
    s.bins = 4;
    s.surrogate.shifts = 0;
    const auto rep = influence_scores(simulate(cfg), s);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (i != j) {
                CHECK(rep.te[j][i] < 0.02);
            }
        }
    }
}
