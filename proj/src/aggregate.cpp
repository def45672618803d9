#include "census/aggregate.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace census {

const char* to_string(AggregateKind k) {
    switch (k) {
        case AggregateKind::Count: return "count";
        case AggregateKind::Sum: return "sum";
        case AggregateKind::Min: return "min";
        case AggregateKind::Max: return "max";
        case AggregateKind::Histogram: return "histogram";
    }
    return "?";
}

AggregateKind aggregate_kind_from_string(const std::string& s) {
    if (s == "count") return AggregateKind::Count;
    if (s == "sum") return AggregateKind::Sum;
    if (s == "min") return AggregateKind::Min;
    if (s == "max") return AggregateKind::Max;
    if (s == "histogram") return AggregateKind::Histogram;
    throw std::invalid_argument("unknown aggregate kind: " + s);
}

Aggregate Aggregate::identity(AggregateKind kind, const std::vector<double>& hist_edges) {
    Aggregate a;
    a.kind_ = kind;
    switch (kind) {
        case AggregateKind::Count:
        case AggregateKind::Sum: a.scalar_ = 0.0; break;
        case AggregateKind::Min: a.scalar_ = std::numeric_limits<double>::infinity(); break;
        case AggregateKind::Max: a.scalar_ = -std::numeric_limits<double>::infinity(); break;
        case AggregateKind::Histogram:
            if (hist_edges.size() < 2 || !std::is_sorted(hist_edges.begin(), hist_edges.end()))
                throw std::invalid_argument("histogram needs >= 2 ascending bucket edges");
            a.edges_ = hist_edges;
            a.counts_.assign(hist_edges.size() - 1, 0.0);
            break;
    }
    return a;
}

Aggregate Aggregate::of_datum(AggregateKind kind, double value,
                              const std::vector<double>& hist_edges) {
    Aggregate a = identity(kind, hist_edges);
    switch (kind) {
        case AggregateKind::Count: a.scalar_ = 1.0; break;
        case AggregateKind::Sum:
        case AggregateKind::Min:
        case AggregateKind::Max: a.scalar_ = value; break;
        case AggregateKind::Histogram: {
            if (value >= a.edges_.front() && value < a.edges_.back()) {
                const auto it = std::upper_bound(a.edges_.begin(), a.edges_.end(), value);
                a.counts_[static_cast<std::size_t>(it - a.edges_.begin()) - 1] += 1.0;
            }
            break;
        }
    }
    return a;
}

std::string Aggregate::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << ":";
    if (kind_ == AggregateKind::Histogram) {
        for (std::size_t i = 0; i < counts_.size(); ++i) os << (i ? "|" : "") << counts_[i];
    } else {
        os << scalar_;
    }
    return os.str();
}

Aggregate merge(const Aggregate& a, const Aggregate& b) {
    if (a.kind() != b.kind()) throw std::invalid_argument("merge: aggregate kind mismatch");
    Aggregate out = a;
    switch (a.kind()) {
        case AggregateKind::Count:
        case AggregateKind::Sum: out.scalar_ = a.scalar_ + b.scalar_; break;
        case AggregateKind::Min: out.scalar_ = std::min(a.scalar_, b.scalar_); break;
        case AggregateKind::Max: out.scalar_ = std::max(a.scalar_, b.scalar_); break;
        case AggregateKind::Histogram:
            if (a.edges_ != b.edges_)
                throw std::invalid_argument("merge: histogram bucket edges mismatch");
            for (std::size_t i = 0; i < out.counts_.size(); ++i) out.counts_[i] += b.counts_[i];
            break;
    }
    return out;
}

Aggregate dedup_and_total(const std::vector<Token>& tokens) {
    if (tokens.empty()) return Aggregate::identity(AggregateKind::Count);
    const AggregateKind kind = tokens.front().aggregate.kind();
    Aggregate total = Aggregate::identity(kind, tokens.front().aggregate.bucket_edges());
    std::unordered_set<std::uint64_t> live_ids;
    for (const auto& t : tokens) {
        total = merge(total, t.aggregate);
        live_ids.insert(t.id);
    }
    // One frozen snapshot per old id, skipping ids whose token is still live.
    std::unordered_map<std::uint64_t, const CheckpointRecord*> best;
    for (const auto& t : tokens) {
        for (const auto& rec : t.checkpoints) {
            if (live_ids.count(rec.old_token_id)) continue;
            auto [it, inserted] = best.emplace(rec.old_token_id, &rec);
            if (!inserted && rec.frozen_transfer_count > it->second->frozen_transfer_count)
                it->second = &rec;
        }
    }
    std::vector<const CheckpointRecord*> records;
    records.reserve(best.size());
    for (const auto& [id, rec] : best) records.push_back(rec);
    std::sort(records.begin(), records.end(),
              [](const CheckpointRecord* x, const CheckpointRecord* y) {
                  return x->old_token_id < y->old_token_id;
              });
    for (const auto* rec : records) total = merge(total, rec->frozen_aggregate);
    return total;
}

} // namespace census
