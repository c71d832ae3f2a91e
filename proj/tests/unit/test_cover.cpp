#include <random>
#include <set>

#include "doctest.h"
#include "mpa/geometry/bad_region.hpp"
#include "mpa/geometry/cover.hpp"
#include "mpa/geometry/separation.hpp"

using namespace mpa::geometry;

namespace {

// alpha by scanning k in double arithmetic.
std::optional<double> alpha_oracle(double L, double ell) {
    std::optional<double> best;
    for (int k = 1; k <= 10000; ++k) {
        const double a = (L - ell) / (2.0 * ell * k);
        if (a >= 0.6 - 1e-12 && a <= 0.8 + 1e-12 && (!best || a > *best)) best = a;
    }
    return best;
}

std::set<ConfigPoint> point_set(const LatticeBox& b) {
    const auto p = b.points();
    return {p.begin(), p.end()};
}

bool subset(const std::set<ConfigPoint>& a, const std::set<ConfigPoint>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Lambda_{side}(c) for a real center, by predicate enumeration over a window.
std::set<ConfigPoint> real_box(const RealCenter& c, double side) {
    std::set<ConfigPoint> out;
    const int axes = c.n * c.d;
    std::vector<Coord> lo(axes), hi(axes);
    for (int a = 0; a < axes; ++a) {
        lo[a] = static_cast<Coord>(std::floor(c.x[a] - side / 2.0)) - 1;
        hi[a] = static_cast<Coord>(std::ceil(c.x[a] + side / 2.0)) + 1;
    }
    ConfigPoint p(c.n, c.d, lo);
    while (true) {
        bool in = true;
        for (int a = 0; a < axes; ++a)
            if (std::abs(static_cast<double>(p.x[a]) - c.x[a]) > side / 2.0 + 1e-9) in = false;
        if (in) out.insert(p);
        int a = axes - 1;
        while (a >= 0 && p.x[a] == hi[a]) {
            p.x[a] = lo[a];
            --a;
        }
        if (a < 0) break;
        ++p.x[a];
    }
    return out;
}

}  // namespace

TEST_CASE("alpha selection worked example and oracle") {
    const auto a = select_alpha(60, 10);
    REQUIRE(a);
    CHECK(a->k == 4);
    CHECK(a->alpha == 0.625);
    for (int ell = 1; ell <= 18; ++ell)
        for (int ratio = 2; ratio <= 40; ++ratio) {
            const double L = ell * ratio;
            const auto got = select_alpha(L, ell);
            const auto want = alpha_oracle(L, ell);
            REQUIRE(static_cast<bool>(got) == static_cast<bool>(want));
            if (got) CHECK(got->alpha == doctest::Approx(*want).epsilon(1e-12));
        }
    CHECK_FALSE(select_alpha(3, 1));
    CHECK_THROWS_AS(SuitableCover(3, 1, RealCenter(1, 1, {0.0})), mpa::ContractError);
}

TEST_CASE("cover properties by enumeration") {
    struct Case {
        double L, ell;
        int n, d;
        std::vector<double> x;
    };
    const std::vector<Case> cases = {
        {60, 10, 1, 1, {0.0}},  {36, 6, 1, 1, {0.5}},    {42, 6, 2, 1, {0.0, 3.0}}, {24, 4, 1, 2, {0.0, 0.5}},
        {18, 3, 2, 1, {1, 2}}, {13, 2, 2, 1, {0.5, 0}}, {21, 3, 1, 2, {0.25, -1}},
    };
    for (const auto& c : cases) {
        CAPTURE(c.L);
        CAPTURE(c.ell);
        const SuitableCover cover(c.L, c.ell, RealCenter(c.n, c.d, c.x));
        const auto parent = point_set(cover.parent());
        REQUIRE(parent == real_box(cover.origin(), c.L));
        const auto centers = cover.centers();

        // union of member boxes is the parent
        std::set<ConfigPoint> uni;
        for (const auto& a : centers) {
            const auto m = point_set(cover.member_box(a));
            REQUIRE(m == real_box(cover.center(a), c.ell));
            uni.insert(m.begin(), m.end());
        }
        CHECK(uni == parent);

        // covering property with the lexicographic tie-break
        for (const auto& b : parent) {
            std::set<ConfigPoint> core;
            for (const auto& p : real_box(to_real(b), c.ell / 10.0))
                if (parent.count(p)) core.insert(p);
            std::optional<LatticeIndex> want;
            for (const auto& a : centers)
                if (subset(core, point_set(cover.member_box(a)))) {
                    want = a;
                    break;
                }
            REQUIRE(want);
            CHECK(cover.cover_index_for(b) == *want);
        }

        // core disjointness over the member grid
        for (const auto& a : centers) {
            const auto core = real_box(cover.center(a), c.ell / 5.0);
            for (const auto& b : centers) {
                if (a == b) continue;
                const auto m = point_set(cover.member_box(b));
                for (const auto& p : core) CHECK_FALSE(m.count(p));
            }
        }

        // counts
        const double per_axis = (c.L - c.ell) / (cover.alpha() * c.ell) + 1.0;
        CHECK(static_cast<double>(centers.size()) == doctest::Approx(std::pow(per_axis, c.n * c.d)));
        CHECK(std::pow(c.L / c.ell, c.n * c.d) <= static_cast<double>(centers.size()));
        CHECK(static_cast<double>(centers.size()) <= std::pow(2.0 * c.L / c.ell, c.n * c.d));

        // nesting: the (2 m alpha + 1) ell box is the union of the member boxes within m steps
        for (const auto& a : centers) {
            for (std::int64_t m = 1; m <= 2; ++m) {
                std::set<ConfigPoint> joined;
                LatticeIndex b(a.size());
                std::vector<std::int64_t> off(a.size(), -m);
                while (true) {
                    for (std::size_t t = 0; t < a.size(); ++t) b[t] = a[t] + off[t];
                    const auto mb = point_set(cover.member_box(b));
                    joined.insert(mb.begin(), mb.end());
                    std::size_t t = a.size();
                    while (t > 0 && off[t - 1] == m) off[--t] = -m;
                    if (t == 0) break;
                    ++off[t - 1];
                }
                CHECK(joined == point_set(cover.scaled_box(a, m)));
            }
        }

        const auto chk = check_cover(cover);
        CHECK(chk.all());
    }
}

TEST_CASE("multiplier sequence") {
    const auto k = k_multipliers(3, 2, 0.625);
    CHECK(k[0] == 6);
    CHECK(k[1] == 14);  // min k > 12 + 1.6
    for (int N = 1; N <= 4; ++N)
        for (int step = 0; step <= 40; ++step) {
            const double alpha = 0.6 + 0.2 * step / 40.0;
            const auto K = K_multipliers(10, N, alpha);
            for (int j = 1; j <= 10; ++j) CHECK(K[j - 1] <= 17.0 * j * N);
            // direct definition
            const auto kk = k_multipliers(10, N, alpha);
            for (int j = 1; j < 10; ++j) {
                const double lower = static_cast<double>(kk[j - 1]) + 6.0 + 2.0 / (N * alpha);
                CHECK(static_cast<double>(kk[j]) > lower);
                CHECK(static_cast<double>(kk[j]) - 1.0 <= lower);
            }
        }
}

TEST_CASE("single bad center deep inside a large parent") {
    const SuitableCover cover(80, 2, RealCenter(1, 1, {0.0}));
    const LatticeIndex a = {0};
    const auto region = build_bad_region(cover, {a});
    REQUIRE(region.members.size() == 1);
    CHECK(region.members[0].j >= 1);
    CHECK(check_bad_region(cover, {a}, region).all());
}

TEST_CASE("bad region postconditions against brute force") {
    std::mt19937_64 rng(17);
    int built = 0;
    for (int t = 0; t < 120; ++t) {
        const int N = 1 + static_cast<int>(rng() % 2);
        const double ell = 1.0 + static_cast<double>(rng() % 2);
        const double L = ell * (N == 1 ? 30.0 + static_cast<double>(rng() % 20) : 50.0 + static_cast<double>(rng() % 30));
        const SuitableCover cover(L, ell, RealCenter(N, 1, std::vector<double>(N, 0.0)));
        const int S = 1 + static_cast<int>(rng() % 3);
        std::vector<LatticeIndex> bad;
        std::uniform_int_distribution<std::int64_t> pick(-cover.limit(), cover.limit());
        for (int s = 0; s < S; ++s) {
            LatticeIndex a(cover.axes());
            for (auto& v : a) v = pick(rng);
            bad.push_back(a);
        }
        BadRegion region;
        try {
            region = build_bad_region(cover, bad);
        } catch (const mpa::RegionOverflow&) {
            continue;
        }
        ++built;
        const auto chk = check_bad_region(cover, bad, region);
        CHECK(chk.all());

        // brute force: separation, boundary, exterior property
        std::set<ConfigPoint> uni;
        for (const auto& m : region.members) {
            const auto s = point_set(m.box);
            uni.insert(s.begin(), s.end());
        }
        for (std::size_t p = 0; p < region.members.size(); ++p) {
            const auto bd = boundary(region.members[p].box, cover.parent());
            for (const auto& v : bd.outer_vertices) CHECK_FALSE(uni.count(v));
        }
        for (const auto& y : cover.parent().points()) {
            if (uni.count(y)) continue;
            const auto c = cover.cover_index_for(y);
            for (const auto& a : bad) {
                const bool far = L_distant(cover.center(c), cover.center(a), ell);
                CHECK(far);
            }
        }
    }
    CHECK(built > 60);
}
