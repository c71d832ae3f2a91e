#include "mpa/geometry/bad_region.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace mpa::geometry {

namespace {

std::vector<std::int64_t> k_sequence(int count, const Rational& increment) {
    std::vector<std::int64_t> k;
    if (count <= 0) return k;
    k.push_back(6);
    for (int j = 1; j < count; ++j) k.push_back((Rational(k.back() + 6) + increment).floor() + 1);
    return k;
}

struct Cluster {
    std::vector<AxisRange> target;  // hull of the halos it must contain
    LatticeIndex center;
    int j = 1;
    LatticeBox box;
    int seeds = 1;
};

std::optional<LatticeIndex> fit_box(const SuitableCover& cover, const std::vector<AxisRange>& target,
                                    const Rational& side) {
    LatticeIndex out(cover.axes());
    for (int a = 0; a < cover.axes(); ++a) {
        const AxisRange& p = cover.parent().range(a);
        const AxisRange& t = target[a];
        const Rational mid2(t.lo + t.hi);
        std::optional<std::int64_t> best;
        Rational best_gap(0);
        for (std::int64_t u = -cover.limit(); u <= cover.limit(); ++u) {
            const Rational c = cover.coordinate(a, u);
            const AxisRange r = exact_range(c, side);
            if (r.lo > t.lo || r.hi < t.hi || r.lo < p.lo || r.hi > p.hi) continue;
            const Rational gap = (Rational(2) * c - mid2).abs();
            if (!best || gap < best_gap) {
                best = u;
                best_gap = gap;
            }
        }
        if (!best) return std::nullopt;
        out[a] = *best;
    }
    return out;
}

std::vector<AxisRange> hull(const std::vector<AxisRange>& a, const std::vector<AxisRange>& b) {
    std::vector<AxisRange> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = {std::min(a[k].lo, b[k].lo), std::max(a[k].hi, b[k].hi)};
    return r;
}

}  // namespace

std::vector<std::int64_t> k_multipliers(int count, int N, double alpha) {
    if (N < 1 || !(alpha > 0.0)) throw ContractError("k_multipliers: N >= 1 and alpha > 0 required");
    std::vector<std::int64_t> k;
    if (count <= 0) return k;
    k.push_back(6);
    const double inc = 2.0 / (N * alpha);
    for (int j = 1; j < count; ++j)
        k.push_back(static_cast<std::int64_t>(std::floor(static_cast<double>(k.back()) + 6.0 + inc)) + 1);
    return k;
}

std::vector<std::int64_t> k_multipliers(int count, const SuitableCover& cover) {
    // 2 / (N alpha) = 2 ell / (N * alpha ell).
    const Rational inc = Rational(2) * cover.ell_exact() / (Rational(cover.n()) * cover.step());
    return k_sequence(count, inc);
}

std::vector<double> K_multipliers(int count, int N, double alpha) {
    std::vector<double> K;
    for (auto kj : k_multipliers(count, N, alpha)) K.push_back(2.0 * static_cast<double>(kj) * N * alpha + 1.0);
    return K;
}

bool BadRegion::contains(const ConfigPoint& y) const {
    return std::any_of(members.begin(), members.end(), [&](const BadRegionMember& m) { return m.box.contains(y); });
}

double BadRegion::sum_K() const {
    double s = 0.0;
    for (const auto& m : members) s += m.K;
    return s;
}

BadRegion build_bad_region(const SuitableCover& cover, const std::vector<LatticeIndex>& bad_centers) {
    const int N = cover.n();
    const int d = cover.d();
    for (const auto& a : bad_centers)
        if (!cover.is_member(a)) throw ContractError("bad region: bad center is not a cover center");

    std::int64_t NN = 1;
    for (int i = 0; i < N; ++i) NN *= N;
    const auto j_max = static_cast<int>(std::max<std::int64_t>(1, static_cast<std::int64_t>(bad_centers.size()) * NN));
    const auto kj = k_multipliers(j_max, cover);
    auto side_of = [&](int j) { return Rational(2 * kj[j - 1] * N) * cover.step() + cover.ell_exact(); };

    BadRegion out;
    out.N = N;
    out.S = bad_centers.size();

    std::vector<Cluster> clusters;
    const Rational halo = Rational(4 * static_cast<std::int64_t>(N) + 2) * cover.ell_exact();
    for (const auto& a : bad_centers) {
        const auto ac = cover.exact_center(a);
        std::vector<int> sigma(N, 0);
        for (std::int64_t t = 0; t < NN; ++t) {
            std::int64_t code = t;
            for (int i = N - 1; i >= 0; --i) {
                sigma[i] = static_cast<int>(code % N);
                code /= N;
            }
            std::vector<AxisRange> target(cover.axes());
            bool empty = false;
            for (int i = 0; i < N && !empty; ++i) {
                for (int k = 0; k < d; ++k) {
                    const int axis = i * d + k;
                    AxisRange r = exact_range(ac[sigma[i] * d + k], halo);
                    const AxisRange& p = cover.parent().range(axis);
                    r = {std::max(r.lo, p.lo), std::min(r.hi, p.hi)};
                    if (r.empty()) {
                        empty = true;
                        break;
                    }
                    target[axis] = r;
                }
            }
            if (empty) continue;
            const auto c = fit_box(cover, target, side_of(1));
            if (!c) throw RegionOverflow("bad region: halo box does not fit inside the parent");
            clusters.push_back({target, *c, 1, cover.box(*c, side_of(1)), 1});
        }
    }

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t p = 0; p < clusters.size() && !merged; ++p) {
            for (std::size_t q = p + 1; q < clusters.size() && !merged; ++q) {
                if (lattice_distance(clusters[p].box, clusters[q].box) > 1) continue;
                const auto target = hull(clusters[p].target, clusters[q].target);
                std::optional<LatticeIndex> c;
                int j = 1;
                for (; j <= j_max; ++j) {
                    c = fit_box(cover, target, side_of(j));
                    if (c) break;
                }
                if (!c) throw RegionOverflow("bad region: merged box does not fit inside the parent");
                clusters[p] = {target, *c, j, cover.box(*c, side_of(j)), clusters[p].seeds + clusters[q].seeds};
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(q));
                merged = true;
            }
        }
    }

    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) { return a.center < b.center; });
    for (auto& c : clusters) {
        BadRegionMember m;
        m.center = c.center;
        m.j = c.j;
        m.k_j = kj[c.j - 1];
        m.K = 2.0 * static_cast<double>(m.k_j) * N * cover.alpha() + 1.0;
        m.box = c.box;
        m.seeds = c.seeds;
        out.members.push_back(std::move(m));
    }
    return out;
}

namespace {

// Does the outer boundary of `inner` (within `parent`) meet `other`?
bool boundary_meets(const LatticeBox& inner, const LatticeBox& other, const LatticeBox& parent) {
    const auto& r = inner.ranges();
    for (std::size_t a = 0; a < r.size(); ++a) {
        for (Coord v : {r[a].lo - 1, r[a].hi + 1}) {
            std::vector<AxisRange> shell = r;
            shell[a] = {v, v};
            const LatticeBox s(inner.n(), inner.d(), shell);
            if (!s.intersect(parent).intersect(other).empty()) return true;
        }
    }
    return false;
}

}  // namespace

BadRegionCheck check_bad_region(const SuitableCover& cover, const std::vector<LatticeIndex>& bad_centers,
                                const BadRegion& region) {
    BadRegionCheck out;
    const int N = cover.n();
    const auto& members = region.members;
    std::int64_t NN = 1;
    for (int i = 0; i < N; ++i) NN *= N;
    const auto S = static_cast<std::int64_t>(bad_centers.size());

    out.inside_parent = std::all_of(members.begin(), members.end(),
                                    [&](const BadRegionMember& m) { return m.box.subset_of(cover.parent()); });
    out.separated = true;
    out.boundary_clear = true;
    for (std::size_t p = 0; p < members.size(); ++p)
        for (std::size_t q = 0; q < members.size(); ++q) {
            if (p == q) continue;
            if (p < q && lattice_distance(members[p].box, members[q].box) <= 1) out.separated = false;
            if (boundary_meets(members[p].box, members[q].box, cover.parent())) out.boundary_clear = false;
        }
    out.multipliers_in_range = std::all_of(members.begin(), members.end(), [&](const BadRegionMember& m) {
        return m.j >= 1 && m.j <= std::max<std::int64_t>(1, S * NN);
    });
    out.sum_K = region.sum_K();
    out.sum_K_bound = 17.0 * static_cast<double>(S) * static_cast<double>(NN) * N;
    out.sum_bound = out.sum_K <= out.sum_K_bound;

    // Sites whose cover box is not ell-distant from some bad box must lie in the union.
    out.exterior_distant = true;
    const int axes = cover.axes();
    std::vector<std::vector<Coord>> preimage_axis(axes);
    for (const auto& c : cover.centers()) {
        bool dangerous = false;
        for (const auto& a : bad_centers)
            if (!cover.ell_distant(c, a)) {
                dangerous = true;
                break;
            }
        if (!dangerous) continue;
        ++out.dangerous_centers;
        bool empty = false;
        for (int a = 0; a < axes; ++a) {
            preimage_axis[a].clear();
            const auto& assign = cover.axis_assignment(a);
            for (std::size_t t = 0; t < assign.size(); ++t)
                if (assign[t] == c[a]) preimage_axis[a].push_back(cover.parent().range(a).lo + static_cast<Coord>(t));
            if (preimage_axis[a].empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> pos(axes, 0);
        ConfigPoint y(cover.n(), cover.d());
        while (true) {
            for (int a = 0; a < axes; ++a) y.x[a] = preimage_axis[a][pos[a]];
            if (!region.contains(y)) {
                out.exterior_distant = false;
                return out;
            }
            int a = axes - 1;
            while (a >= 0 && pos[a] + 1 == preimage_axis[a].size()) {
                pos[a] = 0;
                --a;
            }
            if (a < 0) break;
            ++pos[a];
        }
    }
    return out;
}

}  // namespace mpa::geometry
