#include "census/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace census {

WorldConfig derive_world(int n, double d, double R, double loss, double dt) {
    if (n < 1) throw std::invalid_argument("derive_world: n_nodes must be >= 1");
    if (!(d > 0.0)) throw std::invalid_argument("derive_world: density must be > 0");
    if (!(R > 0.0)) throw std::invalid_argument("derive_world: range must be > 0");
    if (!(loss >= 0.0 && loss < 1.0))
        throw std::invalid_argument("derive_world: loss_prob must be in [0, 1)");
    if (!(dt > 0.0)) throw std::invalid_argument("derive_world: slot_dt must be > 0");
    WorldConfig w;
    w.n_nodes = n;
    w.density_d = d;
    w.range_R = R;
    w.side = std::sqrt(static_cast<double>(n) * std::numbers::pi * R * R / d);
    w.loss_prob = loss;
    w.slot_dt = dt;
    return w;
}

std::vector<std::uint32_t> neighbors(std::span<const Vec2> positions, double R, std::uint32_t i) {
    if (i >= positions.size()) throw std::invalid_argument("neighbors: node index out of range");
    std::vector<std::uint32_t> out;
    const double r2 = R * R;
    for (std::uint32_t j = 0; j < positions.size(); ++j) {
        if (j != i && dist_sq(positions[i], positions[j]) <= r2) out.push_back(j);
    }
    return out;
}

void advance_reflect(Vec2& pos, double& heading, double dist, double side) {
    double x = pos.x + std::cos(heading) * dist;
    double y = pos.y + std::sin(heading) * dist;
    bool flip_x = false;
    bool flip_y = false;
    if (x < 0.0) {
        x = -x;
        flip_x = true;
    } else if (x > side) {
        x = 2.0 * side - x;
        flip_x = true;
    }
    if (y < 0.0) {
        y = -y;
        flip_y = true;
    } else if (y > side) {
        y = 2.0 * side - y;
        flip_y = true;
    }
    // One fold per axis suffices: a slot displacement is far below the side.
    x = std::clamp(x, 0.0, side);
    y = std::clamp(y, 0.0, side);
    pos = {x, y};
    if (flip_x) heading = std::numbers::pi - heading;
    if (flip_y) heading = -heading;
    if (flip_x || flip_y) {
        const double two_pi = 2.0 * std::numbers::pi;
        heading = std::fmod(heading, two_pi);
        if (heading < 0.0) heading += two_pi;
    }
}

NeighborGrid::NeighborGrid(double side, double cell) : side_(side), cell_(cell) {
    dim_ = std::max(1, static_cast<int>(side / cell));
    cell_ = side_ / dim_;
    if (cell_ <= 0.0) {
        cell_ = 1.0;
        dim_ = 1;
    }
}

int NeighborGrid::cell_index(double v) const {
    int c = static_cast<int>(v / cell_);
    return std::clamp(c, 0, dim_ - 1);
}

void NeighborGrid::rebuild(std::span<const Vec2> positions) {
    const std::uint32_t buckets = static_cast<std::uint32_t>(dim_ * dim_);
    bucket_start_.assign(buckets + 1, 0);
    items_.resize(positions.size());
    // Counting sort by bucket keeps ids ascending within each bucket.
    for (const auto& p : positions) {
        const std::uint32_t b = static_cast<std::uint32_t>(cell_index(p.y) * dim_ + cell_index(p.x));
        ++bucket_start_[b + 1];
    }
    for (std::uint32_t b = 0; b < buckets; ++b) bucket_start_[b + 1] += bucket_start_[b];
    std::vector<std::uint32_t> cursor(bucket_start_.begin(), bucket_start_.end() - 1);
    for (std::uint32_t i = 0; i < positions.size(); ++i) {
        const auto& p = positions[i];
        const std::uint32_t b = static_cast<std::uint32_t>(cell_index(p.y) * dim_ + cell_index(p.x));
        items_[cursor[b]++] = i;
    }
}

void NeighborGrid::query(std::span<const Vec2> positions, std::uint32_t i, double R,
                         std::vector<std::uint32_t>& out) const {
    out.clear();
    const double r2 = R * R;
    for_candidates(positions[i], R, [&](std::uint32_t j) {
        if (j != i && dist_sq(positions[i], positions[j]) <= r2) out.push_back(j);
    });
    std::sort(out.begin(), out.end());
}

void NeighborGrid::query_point(std::span<const Vec2> positions, const Vec2& p, double R,
                               std::vector<std::uint32_t>& out) const {
    out.clear();
    const double r2 = R * R;
    for_candidates(p, R, [&](std::uint32_t j) {
        if (dist_sq(positions[j], p) <= r2) out.push_back(j);
    });
    std::sort(out.begin(), out.end());
}

} // namespace census
