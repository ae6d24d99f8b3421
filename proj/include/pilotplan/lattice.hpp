// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pilotplan/error.hpp"

namespace pilotplan {

/// Axial coordinates of a hexagon center on the triangular lattice,
/// stored in the canonical reduced form for the torus.
struct CellCoord {
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

/// Hexagonal torus of L = 3^m cells with the hierarchical index-3
/// sublattice partition. Immutable after construction; geometry is kept
/// internally in units of the cell radius so that channel estimates are
/// radius-free, with meter-valued accessors scaling on the way out.
class CellGrid {
public:
    CellGrid(int order, double cell_radius, double hole_ratio);

    int order() const { return order_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(cells_.size()); }
    double cell_radius() const { return radius_; }
    double hole_ratio() const { return hole_; }
    const std::vector<CellCoord>& cells() const { return cells_; }

    /// Coset index of the cell under the level-th index-3 refinement.
    int color(const CellCoord& c, int level) const;

    /// The L*3^-depth cells (including home) sharing home's pilot set at
    /// the given partition depth. Depth 0 is the root: all L cells.
    std::vector<CellCoord> pilot_group(const CellCoord& home, int depth) const;

    Point2D center(const CellCoord& c) const;
    double torus_distance(const Point2D& p, const Point2D& q) const;

    /// Uniform sample over the hexagon of circumradius r around c,
    /// excluding the center hole disc. Advances rng deterministically.
    Point2D sample_user_position(const CellCoord& c, std::mt19937_64& rng) const;

    // Radius-free geometry (lengths in units of the cell radius).
    Point2D unit_center(const CellCoord& c) const;
    double unit_torus_distance(const Point2D& p, const Point2D& q) const;
    Point2D sample_unit_offset(std::mt19937_64& rng) const;

private:
    int order_;
    double radius_;
    double hole_;
    std::vector<CellCoord> cells_;
    // Torus translation vectors in unit (radius = 1) coordinates.
    double w1x_, w1y_, w2x_, w2y_;
};

}  // namespace pilotplan
