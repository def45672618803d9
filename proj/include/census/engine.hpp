#pragma once

#include <cstdint>
#include <vector>

#include "census/aggregate.hpp"
#include "census/geometry.hpp"
#include "census/metrics.hpp"
#include "census/mobility.hpp"
#include "census/protocol.hpp"

namespace census {

// Everything one seeded trial needs. A trial is strictly sequential; any
// number of trials may run in parallel since they share nothing mutable.
struct SimConfig {
    int n_nodes = 100;
    double density_d = 10.0;
    double range_R = 100.0;
    double loss_prob = 0.0;
    double slot_dt = 0.05;

    MobilityModel mobility = RandomWalk2D{};
    Variant variant = Variant::GradientBias;
    ProtocolConfig protocol;

    AggregateKind agg_kind = AggregateKind::Count;
    std::vector<double> hist_edges;

    int token_count = 1;
    std::uint64_t seed = 1;

    // Stop rules. partial_stop < 1 ends the trial at that coverage fraction.
    // run_to_termination keeps gradient trials alive past full coverage so
    // the in-protocol detector can be observed (bounded by a grace period).
    double partial_stop = 1.0;
    bool run_to_termination = false;
    // Optional local/pure stop heuristic: halt once transfers per visited
    // node exceed this ratio (0 disables).
    double overhead_stop_ratio = 0.0;
    std::int64_t max_slots = 4000000;

    bool record_timeline = true;
    bool exfil = false;
    // Per-slot state-machine checks (level algebra, holder/visited flags).
    bool check_invariants = false;
};

// Runs one trial to completion and reports its metrics.
TrialMetrics run_trial(const SimConfig& cfg);

} // namespace census
