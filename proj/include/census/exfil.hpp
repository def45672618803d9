#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "census/aggregate.hpp"
#include "census/geometry.hpp"
#include "census/rng.hpp"

namespace census {

struct ExfilReport {
    std::vector<Token> tokens;       // per-token final aggregates
    Aggregate dedup_total;           // live aggregates + deduplicated checkpoints
    std::uint64_t flood_msgs = 0;    // broadcasts sent (each node repeats a token id once)
    std::optional<std::int64_t> completion_slot; // set when every node learned every token
};

// Flood every token from its initiator over a static snapshot of the
// network. Each node rebroadcasts each distinct token id exactly once, in
// the slot after it first learned it.
ExfilReport flood_exfiltrate(std::span<const Vec2> positions, double R, double loss_prob,
                             const std::vector<Token>& tokens,
                             const std::vector<std::uint32_t>& initiators, RngStream& channel);

} // namespace census
