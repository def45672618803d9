#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "census/aggregate.hpp"
#include "census/rng.hpp"

namespace census {

enum class Variant { Pure, LocalBias, GradientBias };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Protocol timing and tuning. One transaction spans window_slots:
// 1 announce slot, request_slots request slots, 1 transfer slot.
struct ProtocolConfig {
    int window_slots = 5;
    int request_slots = 3;
    // Gradient refresh: a node at level L holds it for
    // max(1, round(refresh_transactions * L * window_slots)) slots.
    double refresh_transactions = 8.0;
    // Gradient initiation is evaluated every init_period transactions.
    int init_period = 1;
    // Levels below this floor are not adopted or rebroadcast; 0 disables the
    // cap so gradients die out only at non-zero-level regions.
    double gradient_level_floor = 0.0;
    // Reliable transfer (ack / retry / checkpoint machinery).
    bool reliable_transfer = false;
    int max_retries = 3;       // K
    int ack_timeout_rounds = 1; // T_a in transaction windows

    int transfer_slot() const { return request_slots + 1; }
};

// Per-node protocol variables.
struct NodeState {
    bool visited = false;
    bool holder = false;
    double level = 1.0; // 1 unvisited, 0 holder/plain visited, 2^-j on a gradient
    std::uint32_t refresh_remaining = 0;
    std::int64_t last_announce_heard = -1;
    std::int64_t last_gradient_heard = -1;
    std::int64_t last_level0_request_heard = -1;
    std::optional<int> pending_request; // slot offset within the request window
};

struct RequestInfo {
    std::uint32_t from = 0;
    double level = 0.0;
};

// Wire messages. Requests and gradients carry the sender's level; transfers
// and acks carry a per-handover sequence number so retransmissions can be
// told apart from a later legitimate revisit of the same token.
struct AnnounceMsg {
    std::uint32_t holder_id;
};
struct RequestMsg {
    std::uint32_t from;
    double level;
};
struct TransferMsg {
    std::uint32_t from;
    std::uint32_t to;
    std::uint64_t token_id;
    std::uint64_t seq;
};
struct AckMsg {
    std::uint32_t from;
    std::uint64_t token_id;
    std::uint64_t seq;
};
struct GradientMsg {
    std::uint32_t from;
    double level;
};

// --- transaction-window responses ----------------------------------------

// Slot offset (within [0, request_slots)) at which a non-holder that heard
// an announce will send its request. Local bias: unvisited nodes draw from
// the first half of the window, visited nodes from the second half.
int on_announce(const NodeState& state, Variant variant, int request_slots, RngStream& rng);

// Whether a pending requester that overheard another request drops its own.
// Local bias and pure walks suppress on any overheard request; gradient bias
// suppresses only on a strictly greater level.
bool suppress_on_overhear(const NodeState& state, Variant variant, double overheard_level);

// Recipient choice once the request window has expired. Empty request list
// returns nothing (the holder re-announces next transaction).
std::optional<std::uint32_t> select_recipient(const std::vector<RequestInfo>& requests,
                                              Variant variant, RngStream& rng);

// --- gradient field --------------------------------------------------------

// Level adopted by a zero-level non-holder that received gradient messages
// this slot: half of the strongest sender level, if above the floor.
std::optional<double> gradient_adopt_level(const NodeState& state, double max_received_level,
                                           double level_floor);

// Slots a freshly adopted level 0 < L < 1 is held before decaying to zero.
// Levels 0 and 1 never arm a refresh timer.
std::uint32_t refresh_timer_duration(double level, const ProtocolConfig& cfg);

// Longest possible refresh duration (the level-1/2 ring).
std::uint32_t max_refresh_duration(const ProtocolConfig& cfg);

// Quiet interval after which a token whose holders saw only level-0 replies
// may declare the census complete: twice the maximum refresh duration.
std::int64_t termination_window_slots(const ProtocolConfig& cfg);

// --- reliable transfer ------------------------------------------------------

// Fresh token issued after retries are exhausted: new id, identity
// aggregate, prior aggregate frozen onto the checkpoint list.
Token checkpoint_token(const Token& token, std::uint64_t fresh_id);

} // namespace census
