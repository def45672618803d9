#include "census/channel.hpp"

namespace census {

std::vector<std::uint32_t> broadcast_deliveries(const NeighborGrid& grid,
                                                std::span<const Vec2> positions,
                                                std::uint32_t sender, double R, double loss_prob,
                                                RngStream& channel) {
    std::vector<std::uint32_t> nbrs;
    grid.query(positions, sender, R, nbrs);
    if (loss_prob <= 0.0) return nbrs;
    std::vector<std::uint32_t> delivered;
    delivered.reserve(nbrs.size());
    for (std::uint32_t j : nbrs) {
        if (!channel.bernoulli(loss_prob)) delivered.push_back(j);
    }
    return delivered;
}

bool unicast_delivered(std::span<const Vec2> positions, std::uint32_t sender,
                       std::uint32_t recipient, double R, double loss_prob, RngStream& channel) {
    if (dist_sq(positions[sender], positions[recipient]) > R * R) return false;
    if (loss_prob <= 0.0) return true;
    return !channel.bernoulli(loss_prob);
}

} // namespace census
