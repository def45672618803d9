#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace census {

enum class AggregateKind { Count, Sum, Min, Max, Histogram };

const char* to_string(AggregateKind k);
AggregateKind aggregate_kind_from_string(const std::string& s);

// Commutative, associative payload carried by tokens. Histogram bucket edges
// are fixed per trial; values outside the edge span are not counted.
class Aggregate {
public:
    Aggregate() = default;

    static Aggregate identity(AggregateKind kind, const std::vector<double>& hist_edges = {});
    // A single node's contribution: Count adds 1, the others fold `value`.
    static Aggregate of_datum(AggregateKind kind, double value,
                              const std::vector<double>& hist_edges = {});

    AggregateKind kind() const { return kind_; }
    double scalar() const { return scalar_; } // Count/Sum/Min/Max payload
    const std::vector<double>& bucket_counts() const { return counts_; }
    const std::vector<double>& bucket_edges() const { return edges_; }

    bool operator==(const Aggregate& other) const = default;

    std::string describe() const;

    friend Aggregate merge(const Aggregate& a, const Aggregate& b);

private:
    AggregateKind kind_ = AggregateKind::Count;
    double scalar_ = 0.0;
    std::vector<double> edges_;
    std::vector<double> counts_;
};

// Kind-wise combine. Mismatched kinds or histogram edges throw
// std::invalid_argument.
Aggregate merge(const Aggregate& a, const Aggregate& b);

// Frozen snapshot left behind when a transfer is abandoned after retries.
// frozen_transfer_count orders snapshots of the same token lineage: a later
// snapshot subsumes every earlier one.
struct CheckpointRecord {
    std::uint64_t old_token_id = 0;
    Aggregate frozen_aggregate;
    std::uint64_t frozen_transfer_count = 0;
};

struct Token {
    std::uint64_t id = 0;
    Aggregate aggregate;
    std::vector<CheckpointRecord> checkpoints;
    std::uint64_t transfer_count = 0;
    std::uint32_t origin_node = 0;
    std::int64_t quiet_streak_slots = 0; // termination window carried with the token
};

// Merge of all live aggregates plus one frozen aggregate per distinct
// old_token_id. A live token supersedes any record bearing its own id (its
// aggregate already contains the frozen prefix); among records sharing an id
// the one with the largest frozen_transfer_count wins.
Aggregate dedup_and_total(const std::vector<Token>& tokens);

} // namespace census
