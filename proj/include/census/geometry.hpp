#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace census {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dist_sq(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Deployment geometry and channel parameters. The square side is chosen so
// that the mean number of nodes inside one communication disk equals
// density_d at any network size.
struct WorldConfig {
    int n_nodes = 0;
    double density_d = 0.0;
    double range_R = 0.0;
    double side = 0.0;
    double loss_prob = 0.0;
    double slot_dt = 0.05;
};

// side = sqrt(n * pi * R^2 / d). Throws std::invalid_argument on bad input
// (n < 1, d <= 0, R <= 0, loss outside [0, 1)).
WorldConfig derive_world(int n, double d, double R, double loss = 0.0, double dt = 0.05);

// Indices j != i with euclidean distance(i, j) <= R (boundary inclusive).
std::vector<std::uint32_t> neighbors(std::span<const Vec2> positions, double R, std::uint32_t i);

// Specular reflection of a straight-line move of length `dist` from `pos`
// along `heading`, folded into [0, side]^2. Updates pos and heading in
// place; speed magnitude is untouched. Requires dist < side.
void advance_reflect(Vec2& pos, double& heading, double dist, double side);

// Uniform bucket grid for radius queries; rebuilt once per slot.
class NeighborGrid {
public:
    NeighborGrid() = default;
    NeighborGrid(double side, double cell);

    void rebuild(std::span<const Vec2> positions);

    // Neighbors of node i within radius R, ascending id, excluding i.
    void query(std::span<const Vec2> positions, std::uint32_t i, double R,
               std::vector<std::uint32_t>& out) const;
    // Same but around an arbitrary point; does not exclude anything.
    void query_point(std::span<const Vec2> positions, const Vec2& p, double R,
                     std::vector<std::uint32_t>& out) const;
    // True if any node matching pred lies within R of point p.
    template <typename Pred>
    bool any_within(std::span<const Vec2> positions, const Vec2& p, double R, Pred pred) const;

private:
    double side_ = 0.0;
    double cell_ = 1.0;
    int dim_ = 1;
    std::vector<std::uint32_t> bucket_start_; // dim*dim + 1 offsets
    std::vector<std::uint32_t> items_;        // node ids, bucketed, ascending inside a bucket

    int cell_index(double v) const;
    template <typename Fn>
    void for_candidates(const Vec2& p, double R, Fn&& fn) const;
};

template <typename Fn>
void NeighborGrid::for_candidates(const Vec2& p, double R, Fn&& fn) const {
    const int cx = cell_index(p.x);
    const int cy = cell_index(p.y);
    const int reach = static_cast<int>(R / cell_) + 1;
    for (int gy = cy - reach; gy <= cy + reach; ++gy) {
        if (gy < 0 || gy >= dim_) continue;
        for (int gx = cx - reach; gx <= cx + reach; ++gx) {
            if (gx < 0 || gx >= dim_) continue;
            const std::uint32_t b = static_cast<std::uint32_t>(gy * dim_ + gx);
            for (std::uint32_t k = bucket_start_[b]; k < bucket_start_[b + 1]; ++k) {
                fn(items_[k]);
            }
        }
    }
}

template <typename Pred>
bool NeighborGrid::any_within(std::span<const Vec2> positions, const Vec2& p, double R,
                              Pred pred) const {
    const double r2 = R * R;
    bool found = false;
    for_candidates(p, R, [&](std::uint32_t j) {
        if (!found && pred(j) && dist_sq(positions[j], p) <= r2) found = true;
    });
    return found;
}

} // namespace census
