#include "leadership/zonal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "leadership/errors.hpp"

namespace leadership {

namespace {

constexpr double kZeroDirection = 1e-12;

bool segment_contains(double begin, double end, double t, bool last)
{
    return (t >= begin && t < end) || (last && t == end);
}

struct Neighbourhood {
    std::vector<std::size_t> repulsion;
    std::vector<std::size_t> orientation;
    std::vector<std::size_t> attraction;
};

// The blind wedge is centred on -heading; a neighbour is hidden when its
// bearing is more than pi - beta/2 away from the heading.
bool in_blind_wedge(const AgentState& focal, const Vec2& offset, double dist, double blind_angle)
{
    if (blind_angle <= 0.0 || dist == 0.0) {
        return false;
    }
    const double c = std::clamp(dot(focal.heading, offset) / dist, -1.0, 1.0);
    return std::acos(c) > std::numbers::pi - 0.5 * blind_angle;
}

void classify(std::size_t focal, std::span<const AgentState> frame, const AgentParams& p, Neighbourhood& nb)
{
    nb.repulsion.clear();
    nb.orientation.clear();
    nb.attraction.clear();
    const auto& me = frame[focal];
    for (std::size_t j = 0; j < frame.size(); ++j) {
        if (j == focal) {
            continue;
        }
        const Vec2 offset = frame[j].position - me.position;
        const double dist = offset.norm();
        if (dist < p.r_repulsion) {
            nb.repulsion.push_back(j);
            continue;
        }
        if (dist >= p.r_attraction || in_blind_wedge(me, offset, dist, p.blind_angle)) {
            continue;
        }
        if (dist < p.r_orientation) {
            nb.orientation.push_back(j);
        } else {
            nb.attraction.push_back(j);
        }
    }
}

Vec2 unit_offset(const AgentState& from, const AgentState& to)
{
    const Vec2 d = to.position - from.position;
    const double len = d.norm();
    return len > 0.0 ? d / len : Vec2{};
}

void validate_schedule(const InformedSchedule& s, const RunConfig& cfg)
{
    const std::string who = "informed schedule for agent " + std::to_string(s.agent);
    if (s.agent >= cfg.n_agents) {
        throw std::invalid_argument(who + ": agent out of range");
    }
    if (s.segments.empty()) {
        throw std::invalid_argument(who + ": no segments");
    }
    if (s.segments.front().begin > 0.0) {
        throw std::invalid_argument(who + ": does not start at t = 0");
    }
    for (std::size_t k = 0; k < s.segments.size(); ++k) {
        const auto& seg = s.segments[k];
        if (!(seg.begin < seg.end)) {
            throw std::invalid_argument(who + ": empty or reversed interval");
        }
        if (k > 0 && seg.begin < s.segments[k - 1].end) {
            throw std::invalid_argument(who + ": overlapping intervals");
        }
        if (k > 0 && seg.begin > s.segments[k - 1].end) {
            throw std::invalid_argument(who + ": gap between intervals");
        }
        if (!(seg.omega >= 0.0) || !std::isfinite(seg.omega)) {
            throw std::invalid_argument(who + ": omega must be finite and >= 0");
        }
        if (seg.preferred_direction && !is_unit(*seg.preferred_direction)) {
            throw std::invalid_argument(who + ": preferred direction must be a unit vector");
        }
        const auto& p = cfg.params[s.agent];
        if (seg.omega > 0.0 && !seg.preferred_direction && !p.preferred_direction && !p.goal) {
            throw std::invalid_argument(who + ": omega > 0 without a preferred direction");
        }
    }
    if (s.segments.back().end < cfg.horizon()) {
        throw std::invalid_argument(who + ": does not cover the run horizon");
    }
}

}  // namespace

void RunConfig::validate() const
{
    if (n_agents < 1) {
        throw std::invalid_argument("n_agents must be >= 1");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be > 0");
    }
    if (n_steps < 1) {
        throw std::invalid_argument("n_steps must be >= 1");
    }
    if (params.size() != n_agents) {
        throw std::invalid_argument("params has " + std::to_string(params.size()) + " entries for " +
                                    std::to_string(n_agents) + " agents");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        try {
            params[i].validate();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("agent " + std::to_string(i) + ": " + e.what());
        }
    }
    if (sociality.size() != n_agents) {
        throw std::invalid_argument("sociality dimensions do not match n_agents");
    }
    if (sociality.horizon_begin() > 0.0 || sociality.horizon_end() < horizon()) {
        throw std::invalid_argument("sociality schedule does not cover the run horizon");
    }
    if (!(initial.disc_radius >= 0.0)) {
        throw std::invalid_argument("initial disc radius must be >= 0");
    }
    if (initial.frame) {
        if (initial.frame->size() != n_agents) {
            throw std::invalid_argument("initial frame agent count does not match n_agents");
        }
        for (const auto& a : *initial.frame) {
            if (!a.position.finite() || !is_unit(a.heading)) {
                throw std::invalid_argument("initial frame needs finite positions and unit headings");
            }
        }
    }
    std::vector<char> seen(n_agents, 0);
    for (const auto& s : informed_schedules) {
        validate_schedule(s, *this);
        if (seen[s.agent]++) {
            throw std::invalid_argument("agent " + std::to_string(s.agent) + " has two informed schedules");
        }
    }
}

RunConfig default_config(std::size_t n, std::size_t n_steps, std::uint64_t seed, const AgentParams& params)
{
    RunConfig cfg;
    cfg.n_agents = n;
    cfg.n_steps = n_steps;
    cfg.seed = seed;
    cfg.params.assign(n, params);
    cfg.sociality = SocialityMatrix(DenseMatrix::all_ones(n));
    return cfg;
}

std::vector<std::size_t> perceive(std::size_t focal, std::span<const AgentState> frame, Zone zone,
                                  const AgentParams& params)
{
    if (focal >= frame.size()) {
        throw std::out_of_range("focal agent out of range");
    }
    Neighbourhood nb;
    classify(focal, frame, params, nb);
    switch (zone) {
    case Zone::repulsion:
        return nb.repulsion;
    case Zone::orientation:
        return nb.orientation;
    case Zone::attraction:
        return nb.attraction;
    }
    return {};
}

Vec2 repulsion_direction(std::size_t focal, std::span<const std::size_t> neighbours,
                         std::span<const AgentState> frame)
{
    Vec2 d;
    for (const auto j : neighbours) {
        d -= unit_offset(frame[focal], frame[j]);
    }
    return d;
}

Vec2 social_direction(std::size_t focal, std::span<const std::size_t> orient,
                      std::span<const std::size_t> attract, std::span<const AgentState> frame,
                      std::span<const double> sociality_row, double alpha)
{
    Vec2 toward;
    for (const auto j : attract) {
        toward += sociality_row[j] * unit_offset(frame[focal], frame[j]);
    }
    Vec2 align;
    for (const auto j : orient) {
        const Vec2& v = frame[j].heading;
        align += sociality_row[j] * (v / v.norm());
    }
    return alpha * toward + (1.0 - alpha) * align;
}

Vec2 informed_blend(const Vec2& d_hat, double omega, const Vec2& g)
{
    if (omega == 0.0) {
        return d_hat;
    }
    const Vec2 sum = d_hat + omega * g;
    const double len = sum.norm();
    if (len < kZeroDirection) {
        return d_hat;
    }
    return sum / len;
}

Vec2 perturb_heading(const Vec2& d, double sigma, Rng& rng)
{
    if (sigma == 0.0) {
        return d;
    }
    std::normal_distribution<double> angle(0.0, sigma);
    const Vec2 r = rotated(d, angle(rng));
    return r / r.norm();
}

Vec2 rotate_towards(const Vec2& current, const Vec2& desired, double max_angle)
{
    const double gap = angle_between(current, desired);
    if (gap <= max_angle) {
        return desired;
    }
    const double sign = cross(current, desired) >= 0.0 ? 1.0 : -1.0;
    const Vec2 r = rotated(current, sign * max_angle);
    return r / r.norm();
}

InformedState informed_state(const RunConfig& config, std::size_t agent, double time)
{
    const auto& p = config.params[agent];
    InformedState s{p.omega, p.preferred_direction};
    for (const auto& sched : config.informed_schedules) {
        if (sched.agent != agent) {
            continue;
        }
        for (std::size_t k = 0; k < sched.segments.size(); ++k) {
            const auto& seg = sched.segments[k];
            if (segment_contains(seg.begin, seg.end, time, k + 1 == sched.segments.size())) {
                s.omega = seg.omega;
                if (seg.preferred_direction) {
                    s.direction = seg.preferred_direction;
                    s.scheduled_direction = true;
                }
                return s;
            }
        }
    }
    return s;
}

Frame step(std::span<const AgentState> frame, const RunConfig& config, std::size_t step_index, Rng& rng)
{
    const double time = static_cast<double>(step_index) * config.dt;
    const DenseMatrix& s = config.sociality.at(time);
    const std::size_t n = frame.size();
    const std::span<const double> no_weights;

    Frame next(frame.begin(), frame.end());
    Neighbourhood nb;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = config.params[i];
        const auto& me = frame[i];
        classify(i, frame, p, nb);

        Vec2 d = nb.repulsion.empty()
                     ? social_direction(i, nb.orientation, nb.attraction, frame,
                                        n > 0 ? std::span<const double>(s.row(i), n) : no_weights, p.alpha)
                     : repulsion_direction(i, nb.repulsion, frame);
        const double len = d.norm();
        Vec2 desired = len > kZeroDirection ? d / len : me.heading;
        desired = perturb_heading(desired, p.noise_sigma, rng);

        const auto info = informed_state(config, i, time);
        if (info.omega > 0.0) {
            std::optional<Vec2> g = info.direction;
            if (p.goal && !info.scheduled_direction) {
                const Vec2 to_goal = *p.goal - me.position;
                const double dist = to_goal.norm();
                g = dist > kZeroDirection ? std::optional<Vec2>(to_goal / dist) : std::nullopt;
            }
            if (g) {
                desired = informed_blend(desired, info.omega, *g);
            }
        }

        next[i].heading = rotate_towards(me.heading, desired, p.max_turn * config.dt);
        next[i].speed = p.speed;
        next[i].position = me.position + next[i].heading * (p.speed * config.dt);
    }
    return next;
}

Frame initial_frame(const RunConfig& config, Rng& rng)
{
    if (config.initial.frame) {
        Frame f = *config.initial.frame;
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i].speed = config.params[i].speed;
        }
        return f;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Frame f(config.n_agents);
    for (std::size_t i = 0; i < config.n_agents; ++i) {
        const double r = config.initial.disc_radius * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        const double heading = 2.0 * std::numbers::pi * unit(rng);
        f[i].position = {r * std::cos(phi), r * std::sin(phi)};
        f[i].heading = from_angle(heading);
        f[i].speed = config.params[i].speed;
    }
    return f;
}

TrajectoryDataset simulate(const RunConfig& config)
{
    config.validate();
    Rng rng(config.seed);
    std::vector<Frame> frames;
    frames.reserve(config.n_steps + 1);
    frames.push_back(initial_frame(config, rng));
    for (std::size_t k = 0; k < config.n_steps; ++k) {
        Frame next = step(frames.back(), config, k, rng);
        for (const auto& a : next) {
            if (!a.position.finite() || !a.heading.finite()) {
                throw NumericFailure("non-finite agent state at frame " + std::to_string(k + 1), k + 1);
            }
        }
        frames.push_back(std::move(next));
    }
    return make_dataset(config.dt, std::move(frames));
}

}  // namespace leadership
