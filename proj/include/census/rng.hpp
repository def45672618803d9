#pragma once

#include <cstdint>
#include <string_view>

namespace census {

// Deterministic stream RNG (xoshiro256**). Streams are derived from a trial
// seed plus a stable label, so draw sequences do not depend on execution
// order across nodes or trials. Distribution code is hand-rolled: identical
// (seed, stream, call sequence) must yield identical draws on any platform.
class RngStream {
public:
    RngStream() : RngStream(0, "") {}
    RngStream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in [lo, hi] inclusive. Requires lo <= hi.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    // True with probability p.
    bool bernoulli(double p);
    // Standard normal (Box-Muller, both draws consumed every call).
    double gaussian();

private:
    std::uint64_t s_[4];
};

// Stable 64-bit hash used to split streams (FNV-1a over label and indices).
std::uint64_t hash_stream_id(std::uint64_t seed, std::string_view label, std::uint64_t index);

} // namespace census
