#include "census/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace census {

double exploration_ratio(const TrialMetrics& m, double at_coverage) {
    if (!(at_coverage > 0.0 && at_coverage <= 1.0))
        throw std::invalid_argument("exploration_ratio: coverage must be in (0, 1]");
    const std::uint32_t target = static_cast<std::uint32_t>(
        std::ceil(at_coverage * static_cast<double>(m.n_nodes)));
    for (const auto& pt : m.coverage_timeline) {
        if (pt.visited >= target) {
            const std::int64_t through_transfers =
                static_cast<std::int64_t>(pt.visited) - static_cast<std::int64_t>(m.token_count);
            if (through_transfers <= 0)
                throw std::invalid_argument(
                    "exploration_ratio: coverage point precedes the first transfer");
            return static_cast<double>(pt.transfers) / static_cast<double>(through_transfers);
        }
    }
    throw std::invalid_argument("exploration_ratio: trial never reached requested coverage");
}

double union_coverage(const std::vector<const TrialMetrics*>& trials) {
    if (trials.empty()) throw std::invalid_argument("union_coverage: no trials");
    const std::uint32_t n = trials.front()->n_nodes;
    std::vector<std::uint8_t> seen(n, 0);
    for (const auto* t : trials) {
        if (t->n_nodes != n) throw std::invalid_argument("union_coverage: mismatched N");
        if (t->visited_set.size() != n)
            throw std::invalid_argument("union_coverage: trial lacks a visited set");
        for (std::uint32_t i = 0; i < n; ++i) seen[i] |= t->visited_set[i];
    }
    std::uint32_t covered = 0;
    for (auto v : seen) covered += v;
    return static_cast<double>(covered) / static_cast<double>(n);
}

double union_coverage(const std::vector<TrialMetrics>& trials) {
    std::vector<const TrialMetrics*> ptrs;
    ptrs.reserve(trials.size());
    for (const auto& t : trials) ptrs.push_back(&t);
    return union_coverage(ptrs);
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
    // Nearest-rank convention.
    const std::size_t n = sorted.size();
    std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (idx > 0) --idx;
    if (idx >= n) idx = n - 1;
    return sorted[idx];
}

} // namespace

SummaryRow summarize(const std::string& name, std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: no values");
    SummaryRow row;
    row.metric = name;
    row.count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - row.mean) * (v - row.mean);
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        row.stderr_ = sd / std::sqrt(static_cast<double>(values.size()));
    }
    std::sort(values.begin(), values.end());
    row.p10 = percentile(values, 0.10);
    row.p50 = percentile(values, 0.50);
    row.p90 = percentile(values, 0.90);
    row.min = values.front();
    row.max = values.back();
    return row;
}

} // namespace census
