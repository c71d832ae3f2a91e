#include "mpa/geometry/cover.hpp"

#include <algorithm>
#include <limits>

namespace mpa::geometry {

namespace {

constexpr std::int64_t kUnassigned = std::numeric_limits<std::int64_t>::min();

std::optional<AlphaChoice> select_alpha_exact(const Rational& L, const Rational& ell) {
    if (!(ell > Rational(0)) || !(L > ell)) return std::nullopt;
    // Smallest k with (L - ell)/(2 ell k) <= 4/5, i.e. k >= 5 (L - ell) / (8 ell).
    const Rational bound = Rational(5) * (L - ell) / (Rational(8) * ell);
    const std::int64_t k = std::max<std::int64_t>(1, bound.ceil());
    const Rational alpha = (L - ell) / (Rational(2) * ell * Rational(k));
    if (alpha < Rational(3) / Rational(5)) return std::nullopt;
    return AlphaChoice{alpha.to_double(), static_cast<int>(k)};
}

// Merge ranges that are sorted by lower end; returns false if a gap appears.
bool contiguous_union(std::vector<AxisRange> ranges, AxisRange& out) {
    ranges.erase(std::remove_if(ranges.begin(), ranges.end(), [](const AxisRange& r) { return r.empty(); }),
                 ranges.end());
    if (ranges.empty()) {
        out = AxisRange{};
        return true;
    }
    std::sort(ranges.begin(), ranges.end(), [](const AxisRange& a, const AxisRange& b) { return a.lo < b.lo; });
    out = ranges.front();
    for (const auto& r : ranges) {
        if (r.lo > out.hi + 1) return false;
        out.hi = std::max(out.hi, r.hi);
    }
    return true;
}

}  // namespace

AxisRange exact_range(const Rational& c, const Rational& side) {
    const Rational half = side / Rational(2);
    return {(c - half).ceil(), (c + half).floor()};
}

std::optional<AlphaChoice> select_alpha(double L, double ell) {
    return select_alpha_exact(Rational::from_double(L), Rational::from_double(ell));
}

SuitableCover::SuitableCover(double L, double ell, RealCenter x) : L_(L), ell_(ell), origin_(std::move(x)) {
    if (origin_.n < 1 || origin_.d < 1) throw ContractError("cover: empty configuration");
    if (!(ell >= 1.0)) throw ContractError("cover: ell must be >= 1");
    if (!(6.0 * ell <= L)) throw ContractError("cover: requires ell <= L/6");
    L_q_ = Rational::from_double(L);
    ell_q_ = Rational::from_double(ell);
    const auto choice = select_alpha_exact(L_q_, ell_q_);
    if (!choice) throw NoValidAlpha("cover: no alpha in [3/5, 4/5] for these scales");
    alpha_ = choice->alpha;
    k_ = choice->k;
    step_ = (L_q_ - ell_q_) / Rational(2 * static_cast<std::int64_t>(k_));
    limit_ = ((L_q_ / Rational(2)) / step_).floor();
    for (double v : origin_.x) origin_q_.push_back(Rational::from_double(v));

    std::vector<AxisRange> ranges;
    for (const auto& c : origin_q_) ranges.push_back(exact_range(c, L_q_));
    parent_ = LatticeBox(origin_.n, origin_.d, ranges);

    const Rational core = ell_q_ / Rational(10);
    assignment_.resize(axes());
    for (int a = 0; a < axes(); ++a) {
        const AxisRange& pr = parent_.range(a);
        std::vector<AxisRange> members;
        for (std::int64_t i = -limit_; i <= limit_; ++i) members.push_back(exact_range(coordinate(a, i), ell_q_));
        auto& out = assignment_[a];
        out.assign(static_cast<std::size_t>(pr.extent()), kUnassigned);
        for (Coord y = pr.lo; y <= pr.hi; ++y) {
            AxisRange r = exact_range(Rational(y), core);
            r.lo = std::max(r.lo, pr.lo);
            r.hi = std::min(r.hi, pr.hi);
            for (std::int64_t i = -limit_; i <= limit_; ++i) {
                const AxisRange& m = members[static_cast<std::size_t>(i + limit_)];
                if (m.lo <= r.lo && r.hi <= m.hi) {
                    out[static_cast<std::size_t>(y - pr.lo)] = i;
                    break;
                }
            }
        }
    }
}

std::size_t SuitableCover::size() const {
    std::size_t total = 1;
    for (int a = 0; a < axes(); ++a) total *= static_cast<std::size_t>(2 * limit_ + 1);
    return total;
}

Rational SuitableCover::coordinate(int axis, std::int64_t i) const { return origin_q_[axis] + Rational(i) * step_; }

std::vector<LatticeIndex> SuitableCover::centers() const {
    std::vector<LatticeIndex> out;
    out.reserve(size());
    LatticeIndex c(axes(), -limit_);
    while (true) {
        out.push_back(c);
        int a = axes() - 1;
        while (a >= 0 && c[a] == limit_) {
            c[a] = -limit_;
            --a;
        }
        if (a < 0) break;
        ++c[a];
    }
    return out;
}

bool SuitableCover::is_member(const LatticeIndex& c) const {
    if (static_cast<int>(c.size()) != axes()) return false;
    return std::all_of(c.begin(), c.end(), [&](std::int64_t i) { return -limit_ <= i && i <= limit_; });
}

RealCenter SuitableCover::center(const LatticeIndex& c) const {
    RealCenter r(n(), d());
    for (int a = 0; a < axes(); ++a) r.x[a] = coordinate(a, c[a]).to_double();
    return r;
}

std::vector<Rational> SuitableCover::exact_center(const LatticeIndex& c) const {
    std::vector<Rational> r(axes());
    for (int a = 0; a < axes(); ++a) r[a] = coordinate(a, c[a]);
    return r;
}

LatticeBox SuitableCover::box(const LatticeIndex& c, const Rational& side) const {
    if (static_cast<int>(c.size()) != axes()) throw ContractError("cover: index has wrong length");
    std::vector<AxisRange> ranges(axes());
    for (int a = 0; a < axes(); ++a) ranges[a] = exact_range(coordinate(a, c[a]), side);
    return LatticeBox(n(), d(), std::move(ranges));
}

LatticeBox SuitableCover::member_box(const LatticeIndex& c) const { return box(c, ell_q_); }

LatticeBox SuitableCover::scaled_box(const LatticeIndex& c, std::int64_t m) const {
    return box(c, Rational(2 * m) * step_ + ell_q_);
}

LatticeIndex SuitableCover::cover_index_for(const ConfigPoint& b) const {
    if (!parent_.contains(b)) throw ContractError("cover: point outside the parent box");
    LatticeIndex out(axes());
    for (int a = 0; a < axes(); ++a) {
        const std::int64_t i = assignment_[a][static_cast<std::size_t>(b.x[a] - parent_.range(a).lo)];
        if (i == kUnassigned) throw ContractError("cover: site has no covering box");
        out[a] = i;
    }
    return out;
}

bool SuitableCover::ell_distant(const LatticeIndex& c, const std::vector<Rational>& a) const {
    const auto b = exact_center(c);
    const int nn = n();
    const int dd = d();
    auto particle_gap_q = [&](const std::vector<Rational>& u, int i, const std::vector<Rational>& v, int j) {
        Rational m(0);
        for (int k = 0; k < dd; ++k) m = rmax(m, (u[i * dd + k] - v[j * dd + k]).abs());
        return m;
    };
    auto dist_to_product = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
        Rational worst(0);
        for (int i = 0; i < nn; ++i) {
            Rational best = particle_gap_q(u, i, v, 0);
            for (int j = 1; j < nn; ++j) best = rmin(best, particle_gap_q(u, i, v, j));
            worst = rmax(worst, best);
        }
        return worst;
    };
    const Rational reach = rmax(dist_to_product(b, a), dist_to_product(a, b));
    return reach >= Rational(2 * static_cast<std::int64_t>(nn)) * ell_q_;
}

bool SuitableCover::ell_distant(const LatticeIndex& a, const LatticeIndex& b) const {
    return ell_distant(a, exact_center(b));
}

CoverCheck check_cover(const SuitableCover& cover) {
    CoverCheck out;
    out.count = cover.size();
    const int axes = cover.axes();
    const std::int64_t lim = cover.limit();
    const Rational ell = cover.ell_exact();

    out.union_equals_parent = true;
    out.covering = true;
    out.nesting = true;
    for (int a = 0; a < axes; ++a) {
        std::vector<AxisRange> members;
        for (std::int64_t i = -lim; i <= lim; ++i) members.push_back(exact_range(cover.coordinate(a, i), ell));
        AxisRange u;
        if (!contiguous_union(members, u) || !(u == cover.parent().range(a))) out.union_equals_parent = false;
        for (std::int64_t i : cover.axis_assignment(a))
            if (i == kUnassigned) out.covering = false;
        for (std::int64_t c = -lim; c <= lim; ++c) {
            for (std::int64_t m = 1; m <= 2 * lim; ++m) {
                std::vector<AxisRange> parts;
                for (std::int64_t i = c - m; i <= c + m; ++i) parts.push_back(exact_range(cover.coordinate(a, i), ell));
                AxisRange joined;
                const AxisRange big = exact_range(cover.coordinate(a, c), Rational(2 * m) * cover.step() + ell);
                if (!contiguous_union(parts, joined) || !(joined == big)) out.nesting = false;
            }
        }
    }

    // Per axis: does some pair of lattice coordinates (i, j) have intersecting core/member ranges?
    // A violation needs a differing axis with i != j intersecting and every other axis intersecting.
    const std::int64_t window = lim + 2;
    const Rational core_side = ell / Rational(5);
    bool any_differing = false;
    bool every_axis_meets = true;
    for (int a = 0; a < axes; ++a) {
        bool meets = false;
        for (std::int64_t i = -window; i <= window; ++i) {
            const AxisRange core = exact_range(cover.coordinate(a, i), core_side);
            if (core.empty()) continue;
            for (std::int64_t j = -window; j <= window; ++j) {
                const AxisRange mem = exact_range(cover.coordinate(a, j), ell);
                if (range_gap(core, mem) == 0 && std::max(core.lo, mem.lo) <= std::min(core.hi, mem.hi)) {
                    meets = true;
                    if (i != j) any_differing = true;
                }
            }
        }
        if (!meets) every_axis_meets = false;
    }
    out.core_disjoint = !(any_differing && every_axis_meets);

    const Rational per_axis(2 * lim + 1);
    const Rational ratio = Rational::from_double(cover.L()) / ell;
    out.count_bounds = ratio <= per_axis && per_axis <= Rational(2) * ratio;
    out.count_formula = (Rational::from_double(cover.L()) - ell) / cover.step() + Rational(1) == per_axis;
    return out;
}

}  // namespace mpa::geometry
