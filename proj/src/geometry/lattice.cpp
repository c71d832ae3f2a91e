#include "mpa/geometry/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace mpa::geometry {

AxisRange lattice_range(double center, double side) {
    if (!(side >= 0.0) || !std::isfinite(center)) throw ContractError("lattice_range: invalid side or center");
    const double h = side / 2.0;
    return {static_cast<Coord>(std::ceil(center - h)), static_cast<Coord>(std::floor(center + h))};
}

Coord range_gap(const AxisRange& a, const AxisRange& b) {
    return std::max<Coord>({0, b.lo - a.hi, a.lo - b.hi});
}

ParticleRectangle::ParticleRectangle(RealCenter c, std::vector<double> s)
    : center(std::move(c)), sides(std::move(s)) {
    if (center.n < 1 || center.d < 1) throw ContractError("rectangle: n and d must be positive");
    if (sides.size() != static_cast<std::size_t>(center.n))
        throw ContractError("rectangle: one side length per particle required");
    for (double v : sides)
        if (!(v >= 1.0) || !std::isfinite(v)) throw ContractError("rectangle: sides must be finite and >= 1");
}

ParticleRectangle ParticleRectangle::cube(RealCenter c, double side) {
    const int n = c.n;
    return ParticleRectangle(std::move(c), std::vector<double>(n, side));
}

double ParticleRectangle::min_side() const { return *std::min_element(sides.begin(), sides.end()); }
double ParticleRectangle::max_side() const { return *std::max_element(sides.begin(), sides.end()); }

bool ParticleRectangle::is_cube() const {
    return std::all_of(sides.begin(), sides.end(), [&](double s) { return s == sides.front(); });
}

ParticleRectangle ParticleRectangle::factor(const std::vector<int>& particles) const {
    if (particles.empty()) throw ContractError("rectangle factor: empty particle list");
    RealCenter c(static_cast<int>(particles.size()), d());
    std::vector<double> s;
    for (std::size_t t = 0; t < particles.size(); ++t) {
        const int i = particles[t];
        if (i < 0 || i >= n()) throw ContractError("rectangle factor: particle index out of range");
        for (int k = 0; k < d(); ++k) c(static_cast<int>(t), k) = center(i, k);
        s.push_back(sides[i]);
    }
    return ParticleRectangle(std::move(c), std::move(s));
}

LatticeBox::LatticeBox(int n, int d, std::vector<AxisRange> ranges) : n_(n), d_(d), ranges_(std::move(ranges)) {
    if (n < 1 || d < 1 || ranges_.size() != static_cast<std::size_t>(n) * d)
        throw ContractError("lattice box: one range per axis required");
}

LatticeBox LatticeBox::of(const ParticleRectangle& r) {
    std::vector<AxisRange> ranges;
    ranges.reserve(r.center.x.size());
    for (int i = 0; i < r.n(); ++i)
        for (int k = 0; k < r.d(); ++k) ranges.push_back(lattice_range(r.center(i, k), r.sides[i]));
    return LatticeBox(r.n(), r.d(), std::move(ranges));
}

bool LatticeBox::empty() const {
    return std::any_of(ranges_.begin(), ranges_.end(), [](const AxisRange& a) { return a.empty(); });
}

std::size_t LatticeBox::size() const {
    if (empty()) return 0;
    std::size_t total = 1;
    for (const auto& a : ranges_) {
        const auto e = static_cast<std::size_t>(a.extent());
        if (total > std::numeric_limits<std::size_t>::max() / e) return std::numeric_limits<std::size_t>::max();
        total *= e;
    }
    return total;
}

bool LatticeBox::contains(const Coord* p) const {
    for (std::size_t a = 0; a < ranges_.size(); ++a)
        if (!ranges_[a].contains(p[a])) return false;
    return true;
}

bool LatticeBox::contains(const ConfigPoint& p) const {
    if (p.n != n_ || p.d != d_) return false;
    return contains(p.x.data());
}

std::size_t LatticeBox::index_of(const Coord* p) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < ranges_.size(); ++a)
        idx = idx * static_cast<std::size_t>(ranges_[a].extent()) + static_cast<std::size_t>(p[a] - ranges_[a].lo);
    return idx;
}

std::size_t LatticeBox::index_of(const ConfigPoint& p) const {
    if (!contains(p)) throw ContractError("lattice box: point outside box");
    return index_of(p.x.data());
}

void LatticeBox::point_at(std::size_t index, Coord* out) const {
    for (std::size_t a = ranges_.size(); a-- > 0;) {
        const auto e = static_cast<std::size_t>(ranges_[a].extent());
        out[a] = ranges_[a].lo + static_cast<Coord>(index % e);
        index /= e;
    }
}

ConfigPoint LatticeBox::point_at(std::size_t index) const {
    ConfigPoint p(n_, d_);
    point_at(index, p.x.data());
    return p;
}

bool LatticeBox::subset_of(const LatticeBox& other) const {
    if (empty()) return true;
    if (other.n_ != n_ || other.d_ != d_) return false;
    for (std::size_t a = 0; a < ranges_.size(); ++a)
        if (ranges_[a].lo < other.ranges_[a].lo || ranges_[a].hi > other.ranges_[a].hi) return false;
    return true;
}

LatticeBox LatticeBox::intersect(const LatticeBox& other) const {
    if (other.n_ != n_ || other.d_ != d_) throw ContractError("lattice box: shape mismatch");
    std::vector<AxisRange> r(ranges_.size());
    for (std::size_t a = 0; a < ranges_.size(); ++a)
        r[a] = {std::max(ranges_[a].lo, other.ranges_[a].lo), std::min(ranges_[a].hi, other.ranges_[a].hi)};
    return LatticeBox(n_, d_, std::move(r));
}

bool LatticeBox::intersects(const LatticeBox& other) const { return !intersect(other).empty(); }

LatticeBox LatticeBox::particle_box(int i) const {
    std::vector<AxisRange> r(ranges_.begin() + i * d_, ranges_.begin() + (i + 1) * d_);
    return LatticeBox(1, d_, std::move(r));
}

LatticeBox LatticeBox::select(const std::vector<int>& particles) const {
    std::vector<AxisRange> r;
    for (int i : particles)
        for (int k = 0; k < d_; ++k) r.push_back(ranges_[static_cast<std::size_t>(i) * d_ + k]);
    return LatticeBox(static_cast<int>(particles.size()), d_, std::move(r));
}

LatticeBox LatticeBox::projection_hull() const {
    std::vector<AxisRange> r(d_, AxisRange{std::numeric_limits<Coord>::max(), std::numeric_limits<Coord>::min()});
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < d_; ++k) {
            const auto& a = ranges_[static_cast<std::size_t>(i) * d_ + k];
            r[k].lo = std::min(r[k].lo, a.lo);
            r[k].hi = std::max(r[k].hi, a.hi);
        }
    return LatticeBox(1, d_, std::move(r));
}

std::vector<ConfigPoint> LatticeBox::points(std::size_t cap) const {
    const std::size_t count = size();
    if (count > cap) throw CapExceeded("lattice box: point count exceeds cap");
    std::vector<ConfigPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(point_at(i));
    return out;
}

Coord lattice_distance(const LatticeBox& a, const LatticeBox& b) {
    if (a.n() != b.n() || a.d() != b.d()) throw ContractError("lattice distance: shape mismatch");
    if (a.empty() || b.empty()) throw ContractError("lattice distance: empty box");
    Coord m = 0;
    for (std::size_t k = 0; k < a.ranges().size(); ++k) m = std::max(m, range_gap(a.ranges()[k], b.ranges()[k]));
    return m;
}

LatticeBox lattice_box(const ParticleRectangle& r, std::size_t cap) {
    LatticeBox b = LatticeBox::of(r);
    if (b.size() > cap) throw CapExceeded("lattice box: point count exceeds cap");
    return b;
}

std::vector<ConfigPoint> lattice_points(const ParticleRectangle& r, std::size_t cap) {
    return lattice_box(r, cap).points(cap);
}

Boundary boundary(const LatticeBox& inner, const LatticeBox& outer) {
    if (!inner.subset_of(outer)) throw ContractError("boundary: inner box must lie inside outer box");
    Boundary out;
    std::set<ConfigPoint> vertices;
    const std::size_t axes = inner.ranges().size();
    for (const auto& u : inner.points()) {
        for (std::size_t a = 0; a < axes; ++a) {
            for (Coord step : {Coord{-1}, Coord{1}}) {
                ConfigPoint v = u;
                v.x[a] += step;
                if (outer.contains(v) && !inner.contains(v)) {
                    out.edges.emplace_back(u, v);
                    vertices.insert(v);
                }
            }
        }
    }
    out.outer_vertices.assign(vertices.begin(), vertices.end());
    return out;
}

Boundary boundary(const ParticleRectangle& inner, const ParticleRectangle& outer) {
    return boundary(lattice_box(inner), lattice_box(outer));
}

}  // namespace mpa::geometry
