// SPDX-License-Identifier: Apache-2.0
#include "pilotplan/lattice.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "pilotplan/rational.hpp"

namespace pilotplan {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

// Index-3 refinement map on axial coordinates. Columns (1,1) and (-1,2)
// generate the sublattice {(a,b) : a = b (mod 3)}; as a complex map this
// is multiplication by 1 + exp(i*pi/3), so every level is the same
// triangular lattice scaled by sqrt(3) and rotated by 30 degrees.
inline CellCoord level_map(const CellCoord& p) {
    return {p.a - p.b, p.a + 2 * p.b};
}

inline int coset_color(const CellCoord& p) {
    const std::int64_t r = (p.a - p.b) % 3;
    return static_cast<int>(r < 0 ? r + 3 : r);
}

// Strips the level-0 coset offset and descends one level.
inline CellCoord descend(const CellCoord& p, int c) {
    const std::int64_t a0 = p.a - c;
    return {(2 * a0 + p.b) / 3, (-a0 + p.b) / 3};
}

// Euclidean embedding of axial coordinates, center spacing sqrt(3)*r
// with r = 1.
inline Point2D embed(const CellCoord& p) {
    const double d = kSqrt3;
    return {d * (static_cast<double>(p.a) + 0.5 * static_cast<double>(p.b)),
            d * (kSqrt3 / 2.0) * static_cast<double>(p.b)};
}

// m-fold application of level_map to a basis vector.
CellCoord iterate_map(CellCoord p, int times) {
    for (int i = 0; i < times; ++i) p = level_map(p);
    return p;
}

inline double canonical_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

CellGrid::CellGrid(int order, double cell_radius, double hole_ratio)
    : order_(order), radius_(cell_radius), hole_(hole_ratio) {
    if (order < 2) throw InvalidParameter("partition order must be >= 2 (L >= 9)");
    if (!(cell_radius > 0.0)) throw InvalidParameter("cell radius must be positive");
    if (!(hole_ratio >= 0.0 && hole_ratio < 1.0))
        throw InvalidParameter("hole ratio must lie in [0, 1)");

    const std::int64_t count = pow3(order);
    cells_.reserve(count);
    for (std::int64_t index = 0; index < count; ++index) {
        // Decode the base-3 color sequence, most refined level innermost.
        CellCoord p{0, 0};
        std::int64_t digits = index;
        std::array<int, 40> seq{};
        for (int i = 0; i < order_; ++i) {
            seq[i] = static_cast<int>(digits % 3);
            digits /= 3;
        }
        for (int i = order_ - 1; i >= 0; --i) {
            p = level_map(p);
            p.a += seq[i];
        }
        cells_.push_back(p);
    }

    const Point2D w1 = embed(iterate_map({1, 0}, order_));
    const Point2D w2 = embed(iterate_map({0, 1}, order_));
    w1x_ = w1.x; w1y_ = w1.y;
    w2x_ = w2.x; w2y_ = w2.y;
}

int CellGrid::color(const CellCoord& c, int level) const {
    if (level < 0 || level >= order_) throw DepthError("partition level out of range");
    CellCoord p = c;
    for (int i = 0; i < level; ++i) p = descend(p, coset_color(p));
    return coset_color(p);
}

std::vector<CellCoord> CellGrid::pilot_group(const CellCoord& home, int depth) const {
    if (depth < 0 || depth > order_ - 1)
        throw DepthError("pilot-sharing depth out of range (size-1 groups are excluded)");
    std::vector<int> want(depth);
    {
        CellCoord p = home;
        for (int i = 0; i < depth; ++i) {
            want[i] = coset_color(p);
            p = descend(p, want[i]);
        }
    }
    std::vector<CellCoord> group;
    group.reserve(cell_count() / pow3(depth));
    for (const CellCoord& cell : cells_) {
        CellCoord p = cell;
        bool match = true;
        for (int i = 0; i < depth; ++i) {
            const int c = coset_color(p);
            if (c != want[i]) { match = false; break; }
            p = descend(p, c);
        }
        if (match) group.push_back(cell);
    }
    return group;
}

Point2D CellGrid::unit_center(const CellCoord& c) const { return embed(c); }

Point2D CellGrid::center(const CellCoord& c) const {
    const Point2D u = embed(c);
    return {radius_ * u.x, radius_ * u.y};
}

double CellGrid::unit_torus_distance(const Point2D& p, const Point2D& q) const {
    double dx = p.x - q.x;
    double dy = p.y - q.y;
    // Reduce into the fundamental domain; the torus basis is a reduced
    // triangular basis, so the 3x3 image neighborhood suffices.
    const double det = w1x_ * w2y_ - w1y_ * w2x_;
    const double fa = (dx * w2y_ - dy * w2x_) / det;
    const double fb = (dy * w1x_ - dx * w1y_) / det;
    dx -= std::round(fa) * w1x_ + std::round(fb) * w2x_;
    dy -= std::round(fa) * w1y_ + std::round(fb) * w2y_;
    double best = dx * dx + dy * dy;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double ex = dx + i * w1x_ + j * w2x_;
            const double ey = dy + i * w1y_ + j * w2y_;
            best = std::min(best, ex * ex + ey * ey);
        }
    }
    return std::sqrt(best);
}

double CellGrid::torus_distance(const Point2D& p, const Point2D& q) const {
    return radius_ * unit_torus_distance({p.x / radius_, p.y / radius_},
                                         {q.x / radius_, q.y / radius_});
}

Point2D CellGrid::sample_unit_offset(std::mt19937_64& rng) const {
    const double apothem = kSqrt3 / 2.0;
    for (;;) {
        const double x = (2.0 * canonical_unit(rng()) - 1.0) * apothem;
        const double y = 2.0 * canonical_unit(rng()) - 1.0;
        const bool in_hex = std::abs(x) <= apothem &&
                            std::abs(0.5 * x + (kSqrt3 / 2.0) * y) <= apothem &&
                            std::abs(0.5 * x - (kSqrt3 / 2.0) * y) <= apothem;
        if (in_hex && x * x + y * y >= hole_ * hole_) return {x, y};
    }
}

Point2D CellGrid::sample_user_position(const CellCoord& c, std::mt19937_64& rng) const {
    const Point2D o = sample_unit_offset(rng);
    const Point2D u = embed(c);
    return {radius_ * (u.x + o.x), radius_ * (u.y + o.y)};
}

}  // namespace pilotplan
