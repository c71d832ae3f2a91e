#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mpa/geometry/configuration.hpp"

namespace mpa::geometry {

inline constexpr std::size_t kDefaultPointCap = std::size_t{1} << 24;

// Closed integer interval; empty when lo > hi.
struct AxisRange {
    Coord lo = 0;
    Coord hi = -1;

    bool empty() const { return lo > hi; }
    Coord extent() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(Coord v) const { return lo <= v && v <= hi; }
    bool operator==(const AxisRange&) const = default;
};

// Integers y with |y - c| <= side/2.
AxisRange lattice_range(double center, double side);

// Gap between two integer intervals (0 when they overlap).
Coord range_gap(const AxisRange& a, const AxisRange& b);

// Product of one-particle cubes Lambda_{L_i}(x_i); the cube case has all sides equal.
struct ParticleRectangle {
    RealCenter center;
    std::vector<double> sides;

    static ParticleRectangle cube(RealCenter c, double side);
    ParticleRectangle(RealCenter c, std::vector<double> s);
    ParticleRectangle() = default;

    int n() const { return center.n; }
    int d() const { return center.d; }
    double min_side() const;
    double max_side() const;
    bool is_cube() const;
    // Sub-rectangle over the listed particles, in the given order.
    ParticleRectangle factor(const std::vector<int>& particles) const;
};

// Product of integer intervals over the n*d axes (particle-major).
// Points are ordered lexicographically, last axis fastest.
class LatticeBox {
public:
    LatticeBox() = default;
    LatticeBox(int n, int d, std::vector<AxisRange> ranges);
    static LatticeBox of(const ParticleRectangle& r);

    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<AxisRange>& ranges() const { return ranges_; }
    const AxisRange& range(int axis) const { return ranges_[axis]; }

    bool empty() const;
    // Point count, saturating at SIZE_MAX.
    std::size_t size() const;
    bool contains(const ConfigPoint& p) const;
    bool contains(const Coord* p) const;
    std::size_t index_of(const ConfigPoint& p) const;
    std::size_t index_of(const Coord* p) const;
    ConfigPoint point_at(std::size_t index) const;
    void point_at(std::size_t index, Coord* out) const;

    bool subset_of(const LatticeBox& other) const;
    bool intersects(const LatticeBox& other) const;
    LatticeBox intersect(const LatticeBox& other) const;
    // One-particle box of particle i.
    LatticeBox particle_box(int i) const;
    // Box over the listed particles.
    LatticeBox select(const std::vector<int>& particles) const;
    // Smallest one-particle box containing every particle projection.
    LatticeBox projection_hull() const;

    std::vector<ConfigPoint> points(std::size_t cap = kDefaultPointCap) const;

    bool operator==(const LatticeBox&) const = default;

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<AxisRange> ranges_;
};

// Sup-norm distance between two nonempty lattice boxes of the same shape.
Coord lattice_distance(const LatticeBox& a, const LatticeBox& b);

// Throws CapExceeded when the point count exceeds cap.
LatticeBox lattice_box(const ParticleRectangle& r, std::size_t cap = kDefaultPointCap);
std::vector<ConfigPoint> lattice_points(const ParticleRectangle& r, std::size_t cap = kDefaultPointCap);

// Edges (u, v) with u in inner, v in outer \ inner, ||u - v||_1 = 1.
struct Boundary {
    std::vector<std::pair<ConfigPoint, ConfigPoint>> edges;
    std::vector<ConfigPoint> outer_vertices;  // unique, lexicographic
};

Boundary boundary(const LatticeBox& inner, const LatticeBox& outer);
Boundary boundary(const ParticleRectangle& inner, const ParticleRectangle& outer);

}  // namespace mpa::geometry
