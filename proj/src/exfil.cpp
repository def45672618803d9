#include "census/exfil.hpp"

#include <algorithm>
#include <stdexcept>

#include "census/channel.hpp"

namespace census {

ExfilReport flood_exfiltrate(std::span<const Vec2> positions, double R, double loss_prob,
                             const std::vector<Token>& tokens,
                             const std::vector<std::uint32_t>& initiators, RngStream& channel) {
    if (initiators.size() != tokens.size())
        throw std::invalid_argument("flood_exfiltrate: one initiator per token required");
    ExfilReport report;
    report.tokens = tokens;
    report.dedup_total = dedup_and_total(tokens);

    const std::uint32_t n = static_cast<std::uint32_t>(positions.size());
    const std::size_t k = tokens.size();
    if (n == 0 || k == 0) return report;

    NeighborGrid grid(0.0, R);
    {
        double max_x = 0.0;
        for (const auto& p : positions) max_x = std::max({max_x, p.x, p.y});
        grid = NeighborGrid(std::max(max_x, R), R);
    }
    grid.rebuild(positions);

    // knows[i*k + t]: node i has token t's aggregate; tosend holds the
    // one-time rebroadcast obligations for the next slot.
    std::vector<std::uint8_t> knows(static_cast<std::size_t>(n) * k, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tosend; // (node, token index)
    std::size_t known_total = 0;

    auto learn = [&](std::uint32_t node, std::uint32_t t) {
        auto& cell = knows[static_cast<std::size_t>(node) * k + t];
        if (!cell) {
            cell = 1;
            ++known_total;
            tosend.emplace_back(node, t);
        }
    };
    for (std::uint32_t t = 0; t < k; ++t) learn(initiators[t], t);

    std::int64_t slot = 0;
    const std::int64_t slot_cap = 4 * static_cast<std::int64_t>(n) + 16;
    while (!tosend.empty() && slot < slot_cap) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> sending;
        sending.swap(tosend);
        std::sort(sending.begin(), sending.end());
        for (const auto& [node, t] : sending) {
            ++report.flood_msgs;
            for (std::uint32_t j : broadcast_deliveries(grid, positions, node, R, loss_prob,
                                                        channel)) {
                learn(j, t);
            }
        }
        if (known_total == static_cast<std::size_t>(n) * k && !report.completion_slot)
            report.completion_slot = slot;
        ++slot;
    }
    if (known_total == static_cast<std::size_t>(n) * k && !report.completion_slot)
        report.completion_slot = slot > 0 ? slot - 1 : 0;
    return report;
}

} // namespace census
