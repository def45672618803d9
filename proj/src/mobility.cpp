#include "census/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace census {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void start_leg(const RandomWalk2D& m, NodeKinematics& k, RngStream& rng) {
    k.heading = rng.uniform(0.0, kTwoPi);
    k.speed = rng.uniform(m.v_lo, m.v_hi);
    k.leg_remaining = m.leg_len;
}

void pick_waypoint(const RandomWaypoint& m, NodeKinematics& k, double side, RngStream& rng) {
    k.target = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    k.speed = rng.uniform(m.v_lo, m.v_hi);
    k.heading = std::atan2(k.target.y - k.pos.y, k.target.x - k.pos.x);
    if (k.heading < 0.0) k.heading += kTwoPi;
}

void gm_update(const GaussMarkov& m, NodeKinematics& k, RngStream& rng) {
    const double a = m.alpha;
    const double noise = std::sqrt(std::max(0.0, 1.0 - a * a));
    k.speed = a * k.speed + (1.0 - a) * m.mean_speed + noise * m.speed_sigma * rng.gaussian();
    k.speed = std::max(0.0, k.speed);
    // Mean heading tracks the current heading, so only the noise term moves it.
    k.heading += noise * m.direction_sigma * rng.gaussian();
    k.heading = std::fmod(k.heading, kTwoPi);
    if (k.heading < 0.0) k.heading += kTwoPi;
    k.update_timer = m.update_interval;
}

void step_rw2d(const RandomWalk2D& m, NodeKinematics& k, double side, double dt, RngStream& rng) {
    double remaining = k.speed * dt;
    // A slot displacement is tiny next to a leg, but handle multiple leg ends anyway.
    for (int guard = 0; remaining > 0.0 && guard < 64; ++guard) {
        if (k.leg_remaining <= remaining) {
            advance_reflect(k.pos, k.heading, k.leg_remaining, side);
            remaining -= k.leg_remaining;
            const double time_left = k.speed > 0.0 ? remaining / k.speed : 0.0;
            start_leg(m, k, rng);
            remaining = k.speed * time_left;
        } else {
            advance_reflect(k.pos, k.heading, remaining, side);
            k.leg_remaining -= remaining;
            remaining = 0.0;
        }
    }
    if (k.speed == 0.0 && k.leg_remaining <= 0.0) start_leg(m, k, rng);
}

void step_waypoint(const RandomWaypoint& m, NodeKinematics& k, double side, double dt,
                   RngStream& rng) {
    double t = dt;
    for (int guard = 0; t > 0.0 && guard < 64; ++guard) {
        if (k.pause_remaining > 0.0) {
            const double wait = std::min(k.pause_remaining, t);
            k.pause_remaining -= wait;
            t -= wait;
            if (k.pause_remaining <= 0.0) pick_waypoint(m, k, side, rng);
            continue;
        }
        const double to_target = std::sqrt(dist_sq(k.pos, k.target));
        const double step = k.speed * t;
        if (step >= to_target) {
            k.pos = k.target;
            t -= k.speed > 0.0 ? to_target / k.speed : t;
            k.pause_remaining = m.pause;
            k.speed = 0.0;
            if (m.pause <= 0.0) pick_waypoint(m, k, side, rng);
        } else {
            k.heading = std::atan2(k.target.y - k.pos.y, k.target.x - k.pos.x);
            if (k.heading < 0.0) k.heading += kTwoPi;
            k.pos.x += std::cos(k.heading) * step;
            k.pos.y += std::sin(k.heading) * step;
            t = 0.0;
        }
    }
}

void step_gauss_markov(const GaussMarkov& m, NodeKinematics& k, double side, double dt,
                       RngStream& rng) {
    k.update_timer -= dt;
    if (k.update_timer <= 0.0) gm_update(m, k, rng);
    advance_reflect(k.pos, k.heading, k.speed * dt, side);
}

} // namespace

void init_kinematics(const MobilityModel& model, NodeKinematics& k, double side, RngStream& rng) {
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RandomWalk2D>) {
                start_leg(m, k, rng);
            } else if constexpr (std::is_same_v<T, RandomWaypoint>) {
                pick_waypoint(m, k, side, rng);
            } else {
                k.speed = m.mean_speed;
                k.heading = rng.uniform(0.0, kTwoPi);
                k.update_timer = m.update_interval;
            }
        },
        model);
}

void step_mobility(const MobilityModel& model, NodeKinematics& k, double side, double dt,
                   RngStream& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_mobility: dt must be > 0");
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RandomWalk2D>) {
                step_rw2d(m, k, side, dt, rng);
            } else if constexpr (std::is_same_v<T, RandomWaypoint>) {
                step_waypoint(m, k, side, dt, rng);
            } else {
                step_gauss_markov(m, k, side, dt, rng);
            }
        },
        model);
}

} // namespace census
