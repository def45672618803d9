#pragma once

#include <variant>

#include "census/geometry.hpp"
#include "census/rng.hpp"

namespace census {

// 2-D random walk: straight legs of fixed length, new uniform heading and
// speed at each leg end.
struct RandomWalk2D {
    double leg_len = 100.0;
    double v_lo = 2.0;
    double v_hi = 4.0;
};

// Random waypoint: move toward a uniform target, pause on arrival.
struct RandomWaypoint {
    double pause = 2.0;
    double v_lo = 2.0;
    double v_hi = 4.0;
};

// Gauss-Markov: speed and heading are AR(1) processes updated on a fixed
// interval; the mean heading is re-centered on the current heading so the
// direction drifts rather than orbiting a global mean.
struct GaussMarkov {
    double alpha = 0.75;
    double mean_speed = 3.0;
    double speed_sigma = 0.5;
    double direction_sigma = 0.4;
    double update_interval = 1.0;
};

using MobilityModel = std::variant<RandomWalk2D, RandomWaypoint, GaussMarkov>;

struct NodeKinematics {
    Vec2 pos;
    double heading = 0.0;
    double speed = 0.0;
    double leg_remaining = 0.0;   // RandomWalk2D
    double pause_remaining = 0.0; // RandomWaypoint
    Vec2 target;                  // RandomWaypoint
    double update_timer = 0.0;    // GaussMarkov
};

// Draw the model-specific initial state for a node already placed at k.pos.
void init_kinematics(const MobilityModel& model, NodeKinematics& k, double side, RngStream& rng);

// Advance one time step of dt seconds; reflects at the square boundary.
void step_mobility(const MobilityModel& model, NodeKinematics& k, double side, double dt,
                   RngStream& rng);

} // namespace census
