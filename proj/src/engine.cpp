#include "census/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "census/analysis.hpp"
#include "census/channel.hpp"
#include "census/exfil.hpp"

namespace census {

namespace {

enum class MsgType : std::uint8_t { Announce, Request, Transfer, Ack, Gradient };

struct Outgoing {
    MsgType type;
    std::uint32_t sender = 0;
    std::uint32_t to = 0;        // Transfer/Ack
    std::uint64_t token_id = 0;  // Transfer/Ack
    std::uint64_t seq = 0;       // Transfer/Ack
    double level = 0.0;          // Request/Gradient
    std::int32_t flight = -1;    // index into in-flight tokens (ideal transfer)
};

struct AwaitingAck {
    Token shadow;
    std::uint32_t recipient = 0;
    std::uint64_t seq = 0;
    int retries_left = 0;
    std::int64_t deadline = 0;
};

struct NodeRuntime {
    NodeKinematics kin;
    NodeState st;
    double datum = 0.0;
    std::vector<Token> queue; // FIFO; front is the transacting token
    std::vector<AwaitingAck> awaiting;
    std::unordered_map<std::uint64_t, std::uint64_t> acked_seq;

    // per-round scratch
    bool announced = false;
    std::vector<RequestInfo> collected;
    bool request_suppressed = false;

    // per-slot gradient adoption candidate
    double gradient_candidate = 0.0;
};

class Engine {
public:
    explicit Engine(const SimConfig& cfg) : cfg_(cfg) {
        world_ = derive_world(cfg.n_nodes, cfg.density_d, cfg.range_R, cfg.loss_prob,
                              cfg.slot_dt);
        if (cfg.token_count < 1 || cfg.token_count > cfg.n_nodes)
            throw std::invalid_argument("token_count must be in [1, n_nodes]");
        if (!(cfg.partial_stop > 0.0 && cfg.partial_stop <= 1.0))
            throw std::invalid_argument("partial_stop must be in (0, 1]");
        if (cfg.protocol.request_slots < 1 ||
            cfg.protocol.window_slots != cfg.protocol.request_slots + 2)
            throw std::invalid_argument("window_slots must equal request_slots + 2");
    }

    TrialMetrics run();

private:
    SimConfig cfg_;
    WorldConfig world_;
    std::vector<NodeRuntime> nodes_;
    std::vector<Vec2> positions_;
    std::vector<RngStream> node_rng_;
    RngStream channel_rng_;
    NeighborGrid grid_;

    TrialMetrics metrics_;
    std::uint32_t visited_count_ = 0;
    std::uint64_t next_token_id_ = 1;
    std::int64_t slot_ = 0;

    std::vector<Outgoing> outbox_;
    std::vector<Token> in_flight_;
    std::vector<std::pair<std::uint32_t, double>> deferred_gradients_; // (node, level)
    std::vector<Outgoing> deferred_acks_;
    std::vector<std::uint32_t> gradient_touched_;

    double proximity_limit_ = 0.0; // visited fraction below which Lemma-1 stats accrue
    std::int64_t term_window_ = 0;
    std::uint32_t partial_target_ = 0;
    bool termination_fired_at_full_ = false;

    void init_world();
    void step_slot();
    void flush_deferred();
    void tick_timers();
    void phase_sends(int slot_in_round);
    void deliver_all();
    void resolve_gradient_adoption();
    void round_end_update();
    void check_invariants() const;
    bool should_stop();
    void finalize();

    bool is_holder(std::uint32_t i) const { return !nodes_[i].queue.empty(); }
    void mark_visited(std::uint32_t i, Token& tok);
    void accept_token(std::uint32_t to, std::uint32_t from, Token tok, std::uint64_t seq);
    void hash_event(MsgType type, std::uint32_t sender, std::uint32_t receiver,
                    std::uint64_t a = 0, std::uint64_t b = 0);
};

void Engine::hash_event(MsgType type, std::uint32_t sender, std::uint32_t receiver,
                        std::uint64_t a, std::uint64_t b) {
    auto mix = [this](std::uint64_t v) {
        metrics_.event_hash ^= v;
        metrics_.event_hash *= 0x100000001B3ULL;
    };
    if (metrics_.event_hash == 0) metrics_.event_hash = 0xCBF29CE484222325ULL;
    mix(static_cast<std::uint64_t>(slot_));
    mix(static_cast<std::uint64_t>(type));
    mix(sender);
    mix(receiver);
    mix(a);
    mix(b);
}

void Engine::init_world() {
    const std::uint32_t n = static_cast<std::uint32_t>(cfg_.n_nodes);
    nodes_.resize(n);
    positions_.resize(n);
    node_rng_.reserve(n);
    RngStream init_rng(cfg_.seed, "init");
    RngStream token_rng(cfg_.seed, "tokens");
    channel_rng_ = RngStream(cfg_.seed, "channel");
    grid_ = NeighborGrid(world_.side, world_.range_R);

    for (std::uint32_t i = 0; i < n; ++i) {
        node_rng_.emplace_back(cfg_.seed, "node", i);
        auto& nd = nodes_[i];
        nd.kin.pos = {init_rng.uniform(0.0, world_.side), init_rng.uniform(0.0, world_.side)};
        nd.datum = init_rng.uniform(0.0, 100.0);
        init_kinematics(cfg_.mobility, nd.kin, world_.side, node_rng_[i]);
        positions_[i] = nd.kin.pos;
        nd.st.level = 1.0;
    }

    // Seed tokens at distinct uniform nodes; origins count as visited.
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    for (int t = 0; t < cfg_.token_count; ++t) {
        const auto j = static_cast<std::uint32_t>(
            token_rng.uniform_int(t, static_cast<std::int64_t>(n) - 1));
        std::swap(order[t], order[j]);
        const std::uint32_t origin = order[t];
        auto& nd = nodes_[origin];
        nd.st.visited = true;
        nd.st.holder = true;
        nd.st.level = 0.0;
        Token tok;
        tok.id = next_token_id_++;
        tok.aggregate = Aggregate::of_datum(cfg_.agg_kind, nd.datum, cfg_.hist_edges);
        tok.origin_node = origin;
        nd.queue.push_back(std::move(tok));
    }
    visited_count_ = static_cast<std::uint32_t>(cfg_.token_count);

    metrics_.n_nodes = n;
    metrics_.token_count = static_cast<std::uint32_t>(cfg_.token_count);
    metrics_.seed = cfg_.seed;
    metrics_.visited_set.assign(n, 0);
    for (int t = 0; t < cfg_.token_count; ++t) metrics_.visited_set[order[t]] = 1;
    if (cfg_.record_timeline)
        metrics_.coverage_timeline.push_back({0, visited_count_, 0});

    proximity_limit_ = 1.0 - analysis::lemma1_threshold(0.95, 1, cfg_.density_d);
    term_window_ = termination_window_slots(cfg_.protocol);
    partial_target_ = static_cast<std::uint32_t>(
        std::ceil(cfg_.partial_stop * static_cast<double>(n)));
}

void Engine::mark_visited(std::uint32_t i, Token& tok) {
    auto& nd = nodes_[i];
    if (!nd.st.visited) {
        nd.st.visited = true;
        metrics_.visited_set[i] = 1;
        ++visited_count_;
        tok.aggregate = merge(tok.aggregate,
                              Aggregate::of_datum(cfg_.agg_kind, nd.datum, cfg_.hist_edges));
        if (!metrics_.cover_slots && visited_count_ == metrics_.n_nodes) {
            metrics_.cover_slots = slot_;
            metrics_.cover_transactions = slot_ / cfg_.protocol.window_slots + 1;
        }
        if (cfg_.record_timeline)
            metrics_.coverage_timeline.push_back({slot_, visited_count_,
                                                  metrics_.token_transfers});
    }
}

void Engine::accept_token(std::uint32_t to, std::uint32_t from, Token tok, std::uint64_t seq) {
    auto& nd = nodes_[to];
    tok.transfer_count = seq;
    nd.acked_seq[tok.id] = seq;
    ++metrics_.token_transfers;
    mark_visited(to, tok);
    nd.st.holder = true;
    nd.st.level = 0.0;
    nd.st.refresh_remaining = 0;
    nd.queue.push_back(std::move(tok));
    if (cfg_.protocol.reliable_transfer) {
        Outgoing ack;
        ack.type = MsgType::Ack;
        ack.sender = to;
        ack.to = from;
        ack.token_id = nd.queue.back().id;
        ack.seq = seq;
        deferred_acks_.push_back(ack);
    }
}

void Engine::flush_deferred() {
    for (const auto& [node, level] : deferred_gradients_) {
        Outgoing g;
        g.type = MsgType::Gradient;
        g.sender = node;
        g.level = level;
        outbox_.push_back(g);
        ++metrics_.gradient_msgs;
    }
    deferred_gradients_.clear();
    for (const auto& a : deferred_acks_) {
        outbox_.push_back(a);
        ++metrics_.acks;
    }
    deferred_acks_.clear();
}

void Engine::tick_timers() {
    // Gradient refresh decay.
    for (auto& nd : nodes_) {
        if (nd.st.refresh_remaining > 0) {
            if (--nd.st.refresh_remaining == 0) nd.st.level = 0.0;
        }
    }
    // Ack timeouts: retry or checkpoint.
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        auto& nd = nodes_[i];
        if (nd.awaiting.empty()) continue;
        for (std::size_t a = 0; a < nd.awaiting.size();) {
            auto& w = nd.awaiting[a];
            if (slot_ < w.deadline) {
                ++a;
                continue;
            }
            if (w.retries_left > 0) {
                --w.retries_left;
                w.deadline = slot_ + static_cast<std::int64_t>(cfg_.protocol.ack_timeout_rounds) *
                                         cfg_.protocol.window_slots;
                Outgoing t;
                t.type = MsgType::Transfer;
                t.sender = i;
                t.to = w.recipient;
                t.token_id = w.shadow.id;
                t.seq = w.seq;
                outbox_.push_back(t);
                ++metrics_.transfer_msgs;
                ++a;
            } else {
                Token fresh = checkpoint_token(w.shadow, next_token_id_++);
                ++metrics_.checkpoints_created;
                nd.st.holder = true;
                nd.st.level = 0.0;
                nd.st.refresh_remaining = 0;
                nd.queue.push_back(std::move(fresh));
                nd.awaiting.erase(nd.awaiting.begin() + static_cast<std::ptrdiff_t>(a));
            }
        }
    }
}

void Engine::phase_sends(int slot_in_round) {
    const auto& proto = cfg_.protocol;
    const std::uint32_t n = static_cast<std::uint32_t>(nodes_.size());

    if (slot_in_round == 0) {
        const double frac = static_cast<double>(visited_count_) / metrics_.n_nodes;
        const bool below_limit = frac < proximity_limit_;
        for (std::uint32_t i = 0; i < n; ++i) {
            auto& nd = nodes_[i];
            nd.announced = false;
            nd.collected.clear();
            nd.st.pending_request.reset();
            nd.request_suppressed = false;
            if (!is_holder(i)) continue;
            nd.announced = true;
            Outgoing a;
            a.type = MsgType::Announce;
            a.sender = i;
            outbox_.push_back(a);
            ++metrics_.announces;
            if (below_limit) {
                ++metrics_.proximity_transactions;
                const bool has_unvisited = grid_.any_within(
                    positions_, positions_[i], world_.range_R,
                    [this, i](std::uint32_t j) { return j != i && !nodes_[j].st.visited; });
                if (has_unvisited) ++metrics_.proximity_with_unvisited;
            }
        }
        if (cfg_.variant == Variant::GradientBias) {
            const std::int64_t round = slot_ / proto.window_slots;
            if (round % proto.init_period == 0) {
                const std::int64_t refresh_window =
                    static_cast<std::int64_t>(max_refresh_duration(proto));
                for (std::uint32_t i = 0; i < n; ++i) {
                    auto& nd = nodes_[i];
                    if (nd.st.level != 1.0 || nd.st.visited) continue;
                    // No holder in earshot during the previous transaction.
                    if (nd.st.last_announce_heard >= 0 &&
                        slot_ - nd.st.last_announce_heard <= proto.window_slots)
                        continue;
                    // A zero-level neighbor is plausible: either level-0
                    // traffic was overheard recently, or any earlier gradient
                    // field has had a full refresh interval to decay.
                    const bool level0_seen =
                        nd.st.last_level0_request_heard >= 0 &&
                        slot_ - nd.st.last_level0_request_heard <= refresh_window;
                    const bool field_quiet =
                        nd.st.last_gradient_heard < 0 ||
                        slot_ - nd.st.last_gradient_heard > refresh_window;
                    if (!level0_seen && !field_quiet) continue;
                    Outgoing g;
                    g.type = MsgType::Gradient;
                    g.sender = i;
                    g.level = 1.0;
                    outbox_.push_back(g);
                    ++metrics_.gradient_msgs;
                }
            }
        }
        return;
    }

    if (slot_in_round <= proto.request_slots) {
        const int offset = slot_in_round - 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            auto& nd = nodes_[i];
            if (!nd.st.pending_request || nd.request_suppressed) continue;
            if (*nd.st.pending_request != offset || is_holder(i)) continue;
            Outgoing r;
            r.type = MsgType::Request;
            r.sender = i;
            r.level = nd.st.level;
            outbox_.push_back(r);
            ++metrics_.requests;
            nd.st.pending_request.reset();
        }
        return;
    }

    // Transfer slot: evaluate the quiet window, then hand the token over.
    const std::int64_t round_start = slot_ - (proto.window_slots - 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto& nd = nodes_[i];
        if (!nd.announced || !is_holder(i)) continue;
        Token& front = nd.queue.front();
        bool quiet = !nd.collected.empty() &&
                     nd.st.last_gradient_heard < round_start;
        for (const auto& r : nd.collected) {
            if (r.level != 0.0) {
                quiet = false;
                break;
            }
        }
        if (cfg_.variant == Variant::GradientBias) {
            front.quiet_streak_slots = quiet ? front.quiet_streak_slots + proto.window_slots : 0;
            if (front.quiet_streak_slots >= term_window_) {
                if (visited_count_ == metrics_.n_nodes) {
                    if (!metrics_.termination_detect_slot)
                        metrics_.termination_detect_slot = slot_;
                    termination_fired_at_full_ = true;
                } else {
                    ++metrics_.termination_violations;
                }
            }
        }
        if (nd.collected.empty()) continue; // nobody asked; announce again next round
        const auto recipient = select_recipient(nd.collected, cfg_.variant, node_rng_[i]);
        if (!recipient) continue;
        Token moving = std::move(front);
        nd.queue.erase(nd.queue.begin());
        if (nd.queue.empty()) {
            nd.st.holder = false; // released on send
        }
        const std::uint64_t seq = moving.transfer_count + 1;
        Outgoing t;
        t.type = MsgType::Transfer;
        t.sender = i;
        t.to = *recipient;
        t.token_id = moving.id;
        t.seq = seq;
        ++metrics_.transfer_msgs;
        if (proto.reliable_transfer) {
            AwaitingAck w;
            w.recipient = *recipient;
            w.seq = seq;
            w.retries_left = proto.max_retries;
            w.deadline = slot_ + static_cast<std::int64_t>(proto.ack_timeout_rounds) *
                                     proto.window_slots;
            w.shadow = std::move(moving);
            nd.awaiting.push_back(std::move(w));
        } else {
            t.flight = static_cast<std::int32_t>(in_flight_.size());
            in_flight_.push_back(std::move(moving));
        }
        outbox_.push_back(t);
    }
}

void Engine::deliver_all() {
    std::stable_sort(outbox_.begin(), outbox_.end(),
                     [](const Outgoing& a, const Outgoing& b) { return a.sender < b.sender; });
    for (const auto& msg : outbox_) {
        switch (msg.type) {
            case MsgType::Announce: {
                for (std::uint32_t r : broadcast_deliveries(grid_, positions_, msg.sender,
                                                            world_.range_R, world_.loss_prob,
                                                            channel_rng_)) {
                    auto& nd = nodes_[r];
                    nd.st.last_announce_heard = slot_;
                    hash_event(MsgType::Announce, msg.sender, r);
                    if (is_holder(r) || nd.st.pending_request) continue;
                    nd.st.pending_request = on_announce(nd.st, cfg_.variant,
                                                        cfg_.protocol.request_slots, node_rng_[r]);
                    nd.request_suppressed = false;
                }
                break;
            }
            case MsgType::Request: {
                for (std::uint32_t r : broadcast_deliveries(grid_, positions_, msg.sender,
                                                            world_.range_R, world_.loss_prob,
                                                            channel_rng_)) {
                    auto& nd = nodes_[r];
                    hash_event(MsgType::Request, msg.sender, r,
                               std::bit_cast<std::uint64_t>(msg.level));
                    if (msg.level == 0.0) nd.st.last_level0_request_heard = slot_;
                    if (nd.announced && is_holder(r))
                        nd.collected.push_back({msg.sender, msg.level});
                    if (nd.st.pending_request && !nd.request_suppressed &&
                        suppress_on_overhear(nd.st, cfg_.variant, msg.level)) {
                        nd.request_suppressed = true;
                        nd.st.pending_request.reset();
                    }
                }
                break;
            }
            case MsgType::Gradient: {
                for (std::uint32_t r : broadcast_deliveries(grid_, positions_, msg.sender,
                                                            world_.range_R, world_.loss_prob,
                                                            channel_rng_)) {
                    auto& nd = nodes_[r];
                    hash_event(MsgType::Gradient, msg.sender, r,
                               std::bit_cast<std::uint64_t>(msg.level));
                    nd.st.last_gradient_heard = slot_;
                    if (nd.gradient_candidate == 0.0) gradient_touched_.push_back(r);
                    nd.gradient_candidate = std::max(nd.gradient_candidate, msg.level);
                }
                break;
            }
            case MsgType::Transfer: {
                const bool delivered =
                    cfg_.protocol.reliable_transfer
                        ? unicast_delivered(positions_, msg.sender, msg.to, world_.range_R,
                                            world_.loss_prob, channel_rng_)
                        : dist_sq(positions_[msg.sender], positions_[msg.to]) <=
                              world_.range_R * world_.range_R;
                if (!delivered) {
                    if (!cfg_.protocol.reliable_transfer) {
                        // Ideal mode: an unreachable recipient leaves the token
                        // with the sender for the next transaction.
                        auto& snd = nodes_[msg.sender];
                        snd.queue.insert(snd.queue.begin(),
                                         std::move(in_flight_[static_cast<std::size_t>(
                                             msg.flight)]));
                        snd.st.holder = true;
                        snd.st.level = 0.0;
                        snd.st.refresh_remaining = 0;
                    }
                    break;
                }
                hash_event(MsgType::Transfer, msg.sender, msg.to, msg.token_id, msg.seq);
                auto& rcv = nodes_[msg.to];
                const auto it = rcv.acked_seq.find(msg.token_id);
                if (it != rcv.acked_seq.end() && it->second >= msg.seq) {
                    if (cfg_.protocol.reliable_transfer) {
                        Outgoing ack;
                        ack.type = MsgType::Ack;
                        ack.sender = msg.to;
                        ack.to = msg.sender;
                        ack.token_id = msg.token_id;
                        ack.seq = it->second;
                        deferred_acks_.push_back(ack);
                    }
                    break;
                }
                if (cfg_.protocol.reliable_transfer) {
                    auto& snd = nodes_[msg.sender];
                    Token copy;
                    bool found = false;
                    for (const auto& w : snd.awaiting) {
                        if (w.shadow.id == msg.token_id && w.seq == msg.seq) {
                            copy = w.shadow;
                            found = true;
                            break;
                        }
                    }
                    if (!found) break; // checkpointed in the meantime; stale retry
                    accept_token(msg.to, msg.sender, std::move(copy), msg.seq);
                } else {
                    accept_token(msg.to, msg.sender,
                                 std::move(in_flight_[static_cast<std::size_t>(msg.flight)]),
                                 msg.seq);
                }
                break;
            }
            case MsgType::Ack: {
                if (!unicast_delivered(positions_, msg.sender, msg.to, world_.range_R,
                                       world_.loss_prob, channel_rng_))
                    break;
                hash_event(MsgType::Ack, msg.sender, msg.to, msg.token_id, msg.seq);
                auto& snd = nodes_[msg.to];
                for (std::size_t a = 0; a < snd.awaiting.size(); ++a) {
                    if (snd.awaiting[a].shadow.id == msg.token_id &&
                        snd.awaiting[a].seq <= msg.seq) {
                        snd.awaiting.erase(snd.awaiting.begin() + static_cast<std::ptrdiff_t>(a));
                        break;
                    }
                }
                break;
            }
        }
    }
    outbox_.clear();
    in_flight_.clear();
    resolve_gradient_adoption();
}

void Engine::resolve_gradient_adoption() {
    std::sort(gradient_touched_.begin(), gradient_touched_.end());
    gradient_touched_.erase(std::unique(gradient_touched_.begin(), gradient_touched_.end()),
                            gradient_touched_.end());
    for (std::uint32_t i : gradient_touched_) {
        auto& nd = nodes_[i];
        const double candidate = nd.gradient_candidate;
        nd.gradient_candidate = 0.0;
        if (is_holder(i)) continue;
        const auto adopted = gradient_adopt_level(nd.st, candidate,
                                                  cfg_.protocol.gradient_level_floor);
        if (!adopted) continue;
        nd.st.level = *adopted;
        nd.st.refresh_remaining = refresh_timer_duration(*adopted, cfg_.protocol);
        deferred_gradients_.emplace_back(i, *adopted);
    }
    gradient_touched_.clear();
}

void Engine::check_invariants() const {
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        const auto& nd = nodes_[i];
        const double lv = nd.st.level;
        bool ok_level = lv == 0.0 || lv == 1.0;
        if (!ok_level && lv > 0.0 && lv < 1.0) {
            int exp = 0;
            ok_level = std::frexp(lv, &exp) == 0.5;
        }
        if (!ok_level) throw std::logic_error("level outside {0,1} U {2^-j}");
        if (!nd.st.visited && lv != 1.0)
            throw std::logic_error("unvisited node left level 1");
        if (!nd.queue.empty() && (lv != 0.0 || !nd.st.visited))
            throw std::logic_error("holder must be visited at level 0");
        if (nd.st.holder != !nd.queue.empty())
            throw std::logic_error("holder flag out of sync");
        if (lv > 0.0 && lv < 1.0 && nd.st.refresh_remaining == 0)
            throw std::logic_error("gradient level without refresh timer");
    }
}

bool Engine::should_stop() {
    if (visited_count_ >= partial_target_) {
        if (cfg_.partial_stop < 1.0) return true;
        if (!cfg_.run_to_termination) return true;
        if (termination_fired_at_full_) return true;
        const std::int64_t grace =
            8 * static_cast<std::int64_t>(max_refresh_duration(cfg_.protocol));
        if (metrics_.cover_slots && slot_ >= *metrics_.cover_slots + grace) return true;
    }
    if (cfg_.overhead_stop_ratio > 0.0 && cfg_.variant != Variant::GradientBias &&
        visited_count_ > metrics_.token_count) {
        const double ratio = static_cast<double>(metrics_.token_transfers) /
                             static_cast<double>(visited_count_ - metrics_.token_count);
        if (ratio >= cfg_.overhead_stop_ratio) return true;
    }
    return slot_ >= cfg_.max_slots;
}

void Engine::finalize() {
    metrics_.stopped_slot = slot_;
    metrics_.visited_end = visited_count_;

    // Live tokens: everything held in queues plus undelivered in-limbo
    // shadows (their ids are absent from every queue).
    std::vector<Token> live;
    std::vector<std::uint32_t> holders;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        for (const auto& t : nodes_[i].queue) {
            live.push_back(t);
            holders.push_back(i);
        }
    }
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        for (const auto& w : nodes_[i].awaiting) {
            bool id_live = false;
            for (const auto& t : live) {
                if (t.id == w.shadow.id) {
                    id_live = true;
                    break;
                }
            }
            if (!id_live) {
                live.push_back(w.shadow);
                holders.push_back(i);
            }
        }
    }
    if (!live.empty() && cfg_.agg_kind != AggregateKind::Histogram) {
        metrics_.dedup_total = dedup_and_total(live).scalar();
    }
    if (cfg_.exfil && !live.empty()) {
        RngStream flood_rng(cfg_.seed, "exfil");
        const auto report = flood_exfiltrate(positions_, world_.range_R, world_.loss_prob, live,
                                             holders, flood_rng);
        metrics_.flood_msgs = report.flood_msgs;
        if (report.completion_slot) metrics_.flood_slots = report.completion_slot;
    }
}

void Engine::step_slot() {
    if (slot_ > 0) {
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            step_mobility(cfg_.mobility, nodes_[i].kin, world_.side, world_.slot_dt,
                          node_rng_[i]);
            positions_[i] = nodes_[i].kin.pos;
        }
    }
    grid_.rebuild(positions_);
    const int slot_in_round = static_cast<int>(slot_ % cfg_.protocol.window_slots);
    flush_deferred();
    tick_timers();
    phase_sends(slot_in_round);
    deliver_all();
    if (cfg_.check_invariants) check_invariants();
}

TrialMetrics Engine::run() {
    init_world();
    for (slot_ = 0;; ++slot_) {
        step_slot();
        if (should_stop()) break;
    }
    finalize();
    return std::move(metrics_);
}

} // namespace

TrialMetrics run_trial(const SimConfig& cfg) {
    Engine engine(cfg);
    return engine.run();
}

} // namespace census
