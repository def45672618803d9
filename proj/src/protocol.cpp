#include "census/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace census {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Pure: return "pure";
        case Variant::LocalBias: return "local";
        case Variant::GradientBias: return "gradient";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "pure") return Variant::Pure;
    if (s == "local") return Variant::LocalBias;
    if (s == "gradient") return Variant::GradientBias;
    throw std::invalid_argument("unknown variant: " + s);
}

int on_announce(const NodeState& state, Variant variant, int request_slots, RngStream& rng) {
    if (request_slots < 1) throw std::invalid_argument("on_announce: request window empty");
    switch (variant) {
        case Variant::LocalBias: {
            const int half = request_slots / 2;
            if (!state.visited) {
                return static_cast<int>(rng.uniform_int(0, half > 0 ? half - 1 : 0));
            }
            return static_cast<int>(rng.uniform_int(half, request_slots - 1));
        }
        case Variant::GradientBias:
        case Variant::Pure:
            return static_cast<int>(rng.uniform_int(0, request_slots - 1));
    }
    return 0;
}

bool suppress_on_overhear(const NodeState& state, Variant variant, double overheard_level) {
    if (variant == Variant::GradientBias) return overheard_level > state.level;
    return true;
}

std::optional<std::uint32_t> select_recipient(const std::vector<RequestInfo>& requests,
                                              Variant variant, RngStream& rng) {
    if (requests.empty()) return std::nullopt;
    auto pick_uniform = [&rng](const std::vector<const RequestInfo*>& pool) {
        return pool[static_cast<std::size_t>(
                        rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))]
            ->from;
    };
    std::vector<const RequestInfo*> pool;
    switch (variant) {
        case Variant::Pure:
            for (const auto& r : requests) pool.push_back(&r);
            break;
        case Variant::LocalBias: {
            for (const auto& r : requests)
                if (r.level >= 1.0) pool.push_back(&r); // unvisited requesters first
            if (pool.empty())
                for (const auto& r : requests) pool.push_back(&r);
            break;
        }
        case Variant::GradientBias: {
            double best = -1.0;
            for (const auto& r : requests) best = std::max(best, r.level);
            for (const auto& r : requests)
                if (r.level == best) pool.push_back(&r);
            break;
        }
    }
    return pick_uniform(pool);
}

std::optional<double> gradient_adopt_level(const NodeState& state, double max_received_level,
                                           double level_floor) {
    if (state.holder || state.level != 0.0) return std::nullopt;
    const double adopted = max_received_level / 2.0;
    if (adopted <= 0.0) return std::nullopt;
    if (level_floor > 0.0 && adopted < level_floor) return std::nullopt;
    return adopted;
}

std::uint32_t refresh_timer_duration(double level, const ProtocolConfig& cfg) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("refresh_timer_duration: level must be in (0, 1)");
    const double slots = cfg.refresh_transactions * level * cfg.window_slots;
    return static_cast<std::uint32_t>(std::max(1.0, std::round(slots)));
}

std::uint32_t max_refresh_duration(const ProtocolConfig& cfg) {
    return refresh_timer_duration(0.5, cfg);
}

std::int64_t termination_window_slots(const ProtocolConfig& cfg) {
    return 2 * static_cast<std::int64_t>(max_refresh_duration(cfg));
}

Token checkpoint_token(const Token& token, std::uint64_t fresh_id) {
    Token fresh;
    fresh.id = fresh_id;
    fresh.aggregate = Aggregate::identity(token.aggregate.kind(), token.aggregate.bucket_edges());
    fresh.checkpoints = token.checkpoints;
    fresh.checkpoints.push_back({token.id, token.aggregate, token.transfer_count});
    fresh.transfer_count = 0;
    fresh.origin_node = token.origin_node;
    return fresh;
}

} // namespace census
