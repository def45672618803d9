#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace census {

// One (slot, visited, cumulative transfers) row, appended whenever the
// omniscient visited count grows.
struct CoveragePoint {
    std::int64_t slot = 0;
    std::uint32_t visited = 0;
    std::uint64_t transfers = 0;
};

struct TrialMetrics {
    std::uint32_t n_nodes = 0;
    std::uint32_t token_count = 0;
    std::uint64_t seed = 0;

    std::optional<std::int64_t> cover_slots;        // slot of 100% coverage
    std::optional<std::int64_t> cover_transactions; // transaction index of same
    std::int64_t stopped_slot = 0;

    std::uint64_t token_transfers = 0; // completed handovers
    std::uint64_t transfer_msgs = 0;   // transfer sends including retries
    std::uint64_t announces = 0;
    std::uint64_t requests = 0;
    std::uint64_t acks = 0;
    std::uint64_t gradient_msgs = 0;
    std::uint64_t checkpoints_created = 0;

    std::vector<CoveragePoint> coverage_timeline;
    std::vector<std::uint8_t> visited_set; // size n_nodes
    std::uint32_t visited_end = 0;

    std::optional<std::int64_t> termination_detect_slot;
    std::uint64_t termination_violations = 0; // detector fired below 100%

    // Transactions observed while the visited fraction was below the
    // one-hop proximity threshold, and how many of them had an unvisited
    // one-hop neighbor of the holder.
    std::uint64_t proximity_transactions = 0;
    std::uint64_t proximity_with_unvisited = 0;

    std::optional<double> dedup_total;  // deduplicated final aggregate (scalar kinds)
    std::optional<std::uint64_t> flood_msgs;
    std::optional<std::int64_t> flood_slots;

    std::uint64_t event_hash = 0; // digest of the full delivery log
};

// Cumulative transfers divided by nodes visited through transfers
// (visited minus the seeded token origins), taken at the first slot where
// coverage reached ceil(at_coverage * N). Throws if the trial never got
// there or if the point precedes the first transfer.
double exploration_ratio(const TrialMetrics& m, double at_coverage);

// |union of visited sets| / N. All trials must share the same N.
double union_coverage(const std::vector<const TrialMetrics*>& trials);
double union_coverage(const std::vector<TrialMetrics>& trials);

struct SummaryRow {
    std::string metric;
    std::size_t count = 0;
    double mean = 0.0;
    double stderr_ = 0.0; // sample sd / sqrt(n)
    double p10 = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Cross-trial summary of one metric; values must be non-empty.
SummaryRow summarize(const std::string& name, std::vector<double> values);

} // namespace census
