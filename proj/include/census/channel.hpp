#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "census/geometry.hpp"
#include "census/rng.hpp"

namespace census {

// Receivers of one slotted broadcast: every current neighbor of the sender,
// each delivered independently with probability 1 - loss_prob. Receiver
// order is ascending id, so the channel stream is consumed in a fixed order.
std::vector<std::uint32_t> broadcast_deliveries(const NeighborGrid& grid,
                                                std::span<const Vec2> positions,
                                                std::uint32_t sender, double R, double loss_prob,
                                                RngStream& channel);

// Point-to-point delivery outcome: recipient in range and not lost.
bool unicast_delivered(std::span<const Vec2> positions, std::uint32_t sender,
                       std::uint32_t recipient, double R, double loss_prob, RngStream& channel);

} // namespace census
