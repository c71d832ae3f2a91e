#include <random>
#include <set>

#include "doctest.h"
#include "mpa/geometry/lattice.hpp"
#include "mpa/geometry/separation.hpp"

using namespace mpa::geometry;

namespace {

// Reference Hausdorff distance over explicit particle sets.
double hausdorff_oracle(const ConfigPoint& a, const ConfigPoint& b) {
    auto pos = [](const ConfigPoint& p) {
        std::set<std::vector<Coord>> s;
        for (int i = 0; i < p.n; ++i) s.insert(std::vector<Coord>(p.particle(i).begin(), p.particle(i).end()));
        return s;
    };
    const auto A = pos(a);
    const auto B = pos(b);
    auto gap = [](const std::vector<Coord>& u, const std::vector<Coord>& v) {
        Coord m = 0;
        for (std::size_t k = 0; k < u.size(); ++k) m = std::max(m, std::abs(u[k] - v[k]));
        return m;
    };
    Coord h = 0;
    for (const auto& u : A) {
        Coord best = std::numeric_limits<Coord>::max();
        for (const auto& v : B) best = std::min(best, gap(u, v));
        h = std::max(h, best);
    }
    for (const auto& v : B) {
        Coord best = std::numeric_limits<Coord>::max();
        for (const auto& u : A) best = std::min(best, gap(u, v));
        h = std::max(h, best);
    }
    return static_cast<double>(h);
}

ConfigPoint random_point(std::mt19937_64& rng, int n, int d, Coord span) {
    std::uniform_int_distribution<Coord> u(-span, span);
    ConfigPoint p(n, d);
    for (auto& v : p.x) v = u(rng);
    return p;
}

// Enumerate integer points of the window [c - r, c + r]^{nd} satisfying the box predicate.
std::vector<ConfigPoint> box_oracle(const ParticleRectangle& r) {
    const int axes = r.n() * r.d();
    std::vector<Coord> lo(axes), hi(axes);
    for (int a = 0; a < axes; ++a) {
        const double half = r.sides[a / r.d()] / 2.0;
        lo[a] = static_cast<Coord>(std::floor(r.center.x[a] - half)) - 1;
        hi[a] = static_cast<Coord>(std::ceil(r.center.x[a] + half)) + 1;
    }
    std::vector<ConfigPoint> out;
    ConfigPoint p(r.n(), r.d(), lo);
    while (true) {
        bool inside = true;
        for (int a = 0; a < axes; ++a)
            if (std::abs(static_cast<double>(p.x[a]) - r.center.x[a]) > r.sides[a / r.d()] / 2.0) inside = false;
        if (inside) out.push_back(p);
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

TEST_CASE("hausdorff distance worked example") {
    const ConfigPoint x(2, 1, {0, 5});
    const ConfigPoint y(2, 1, {1, 4});
    CHECK(hausdorff(x, y) == 1.0);
    CHECK(distance(x, y) == 1.0);
    const ConfigPoint z(2, 1, {4, 1});
    CHECK(hausdorff(x, z) == 1.0);
    CHECK(distance(x, z) == 4.0);
    CHECK(diam(x) == 5.0);
}

TEST_CASE("hausdorff matches set oracle and sandwich inequality holds") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int d = 1 + static_cast<int>(rng() % 3);
        const auto x = random_point(rng, n, d, 6);
        const auto y = random_point(rng, n, d, 6);
        const double dh = hausdorff(x, y);
        REQUIRE(dh == hausdorff_oracle(x, y));
        CHECK(dh == hausdorff(y, x));
        CHECK(dh <= distance(x, y));
        CHECK(distance(x, y) <= dh + diam(x));
        // permutation invariance
        ConfigPoint xp = x;
        for (int i = 0; i + 1 < n; i += 2)
            for (int k = 0; k < d; ++k) std::swap(xp(i, k), xp(i + 1, k));
        CHECK(hausdorff(xp, y) == dh);
        const auto z = random_point(rng, n, d, 6);
        CHECK(hausdorff(x, z) <= hausdorff(x, y) + hausdorff(y, z));
    }
}

TEST_CASE("bracket and norms") {
    const ConfigPoint a(2, 2, {1, -3, 2, 0});
    CHECK(sup_norm(a) == 3.0);
    CHECK(bracket(a) == doctest::Approx(std::sqrt(10.0)));
    const RealCenter r = to_real(a);
    CHECK(sup_norm(r) == 3.0);
}

TEST_CASE("lattice box matches predicate enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int d = 1 + static_cast<int>(rng() % 2);
        RealCenter x(n, d);
        for (auto& v : x.x) v = std::round(c(rng) * 4.0) / 4.0;
        std::vector<double> sides(n);
        for (auto& s : sides) s = 1.0 + static_cast<double>(rng() % 12) / 2.0;
        const ParticleRectangle r(x, sides);
        const auto pts = lattice_points(r);
        const auto oracle = box_oracle(r);
        REQUIRE(pts == oracle);  // same set, same lexicographic order
        const LatticeBox b = lattice_box(r);
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(b.index_of(pts[i]) == i);
    }
}

TEST_CASE("cube cardinality bounds") {
    for (int L = 2; L <= 12; ++L)
        for (double shift : {0.0, 0.5, 0.25}) {
            for (int nd : {1, 2, 3}) {
                RealCenter x(nd, 1);
                for (auto& v : x.x) v = shift;
                const auto count = static_cast<double>(lattice_box(ParticleRectangle::cube(x, L)).size());
                CHECK(std::pow(L - 2.0, nd) < count);
                CHECK(count <= std::pow(L + 1.0, nd));
            }
        }
}

TEST_CASE("half-integer and degenerate centers") {
    const auto b = lattice_points(ParticleRectangle::cube(RealCenter(1, 1, {0.5}), 1.0));
    REQUIRE(b.size() == 2);
    CHECK(b[0].x[0] == 0);
    CHECK(b[1].x[0] == 1);
    CHECK(lattice_points(ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 1.0)).size() == 1);
    CHECK_THROWS_AS(lattice_box(ParticleRectangle::cube(RealCenter(2, 2, {0, 0, 0, 0}), 40.0), 1000), mpa::CapExceeded);
}

TEST_CASE("boundary worked example and oracle") {
    const auto inner = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 2.0);
    const auto outer = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 4.0);
    const auto bd = boundary(inner, outer);
    REQUIRE(bd.edges.size() == 2);
    std::set<std::pair<Coord, Coord>> e;
    for (const auto& [u, v] : bd.edges) e.insert({u.x[0], v.x[0]});
    CHECK(e == std::set<std::pair<Coord, Coord>>{{-1, -2}, {1, 2}});

    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int d = 1 + static_cast<int>(rng() % 2);
        RealCenter c(n, d);
        for (auto& v : c.x) v = static_cast<double>(rng() % 3);
        const double Lin = 1.0 + static_cast<double>(rng() % 4);
        const auto in = ParticleRectangle::cube(c, Lin);
        const auto out = ParticleRectangle::cube(c, Lin + 2.0 + static_cast<double>(rng() % 3));
        const auto got = boundary(in, out);
        // double-loop oracle
        const auto ip = lattice_points(in);
        const auto op = lattice_points(out);
        const LatticeBox ib = lattice_box(in);
        std::set<std::pair<ConfigPoint, ConfigPoint>> want;
        for (const auto& u : ip)
            for (const auto& v : op) {
                if (ib.contains(v)) continue;
                Coord l1 = 0;
                for (std::size_t k = 0; k < u.x.size(); ++k) l1 += std::abs(u.x[k] - v.x[k]);
                if (l1 == 1) want.insert({u, v});
            }
        std::set<std::pair<ConfigPoint, ConfigPoint>> have(got.edges.begin(), got.edges.end());
        CHECK(have == want);
        std::set<ConfigPoint> plus;
        for (const auto& [u, v] : want) plus.insert(v);
        CHECK(std::vector<ConfigPoint>(plus.begin(), plus.end()) == got.outer_vertices);
    }
    CHECK_THROWS_AS(boundary(outer, inner), mpa::ContractError);
}

TEST_CASE("interactivity agrees with subset enumeration") {
    std::mt19937_64 rng(5);
    int pi_seen = 0;
    for (int t = 0; t < 400; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int d = 1 + static_cast<int>(rng() % 2);
        RealCenter c(n, d);
        for (auto& v : c.x) v = static_cast<double>(static_cast<int>(rng() % 13) - 6);
        const double L = 1.0 + static_cast<double>(rng() % 3);
        const double r0 = 1.0;
        const auto box = ParticleRectangle::cube(c, L);
        const auto got = classify_interactivity(box, r0);
        // Oracle: some nonempty proper J with min cross distance > r0 at every lattice point.
        const auto pts = lattice_points(box);
        bool any = false;
        std::vector<int> lowest;
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            bool ok = true;
            for (const auto& p : pts) {
                for (int i = 0; i < n && ok; ++i)
                    for (int j = 0; j < n && ok; ++j)
                        if (((mask >> i) & 1u) && !((mask >> j) & 1u) && particle_gap(p.particle(i), p.particle(j)) <= r0)
                            ok = false;
                if (!ok) break;
            }
            if (ok) any = true;
        }
        CHECK(got.partially_interactive == any);
        if (got.partially_interactive) {
            ++pi_seen;
            CHECK(got.J.front() == 0);
            for (const auto& p : pts)
                for (int i : got.J)
                    for (int j : got.J_complement) CHECK(particle_gap(p.particle(i), p.particle(j)) > r0);
        }
    }
    CHECK(pi_seen > 50);
}

TEST_CASE("separation worked example and sufficient conditions") {
    const auto a = ParticleRectangle::cube(RealCenter(2, 1, {0.0, 0.0}), 4.0);
    const auto b = ParticleRectangle::cube(RealCenter(2, 1, {20.0, 0.0}), 4.0);
    CHECK(partially_separated(a, b));
    CHECK_FALSE(fully_separated(a, b));
    CHECK(partially_separated_by_hausdorff(a.center, b.center, 4.0));

    const auto p = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 2.0);
    const auto q = ParticleRectangle::cube(RealCenter(1, 1, {5.0}), 2.0);
    CHECK(fully_separated(p, q));
    CHECK(partially_separated(p, q));

    std::mt19937_64 rng(9);
    for (int t = 0; t < 3000; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int d = 1 + static_cast<int>(rng() % 2);
        const double L = 1.0 + static_cast<double>(rng() % 6);
        const auto x = to_real(random_point(rng, n, d, 10));
        const auto y = to_real(random_point(rng, n, d, 10));
        const auto bx = ParticleRectangle::cube(x, L);
        const auto by = ParticleRectangle::cube(y, L);
        if (hausdorff(x, y) > L) CHECK(partially_separated(bx, by));
        if (set_distance(x, y) > L) CHECK(fully_separated(bx, by));
        if (fully_separated(bx, by)) CHECK(partially_separated(bx, by));
    }
}

TEST_CASE("L-distant fully interactive boxes are fully separated") {
    std::mt19937_64 rng(13);
    const double r0 = 1.0;
    int checked = 0;
    for (int t = 0; t < 20000; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int d = 1 + static_cast<int>(rng() % 2);
        const double L = 2.0 * (n - 1) * r0 + 1.0 + static_cast<double>(rng() % 3);
        const auto x = to_real(random_point(rng, n, d, 3 * n));
        const auto y = to_real(random_point(rng, n, d, 8 * n + 20));
        const auto bx = ParticleRectangle::cube(x, L);
        const auto by = ParticleRectangle::cube(y, L);
        if (classify_interactivity(bx, r0).partially_interactive) continue;
        if (classify_interactivity(by, r0).partially_interactive) continue;
        double cross = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cross = std::max(cross, particle_gap(x.particle(i), y.particle(j)));
        if (cross < 2.0 * n * L) continue;
        ++checked;
        CHECK(fully_separated(bx, by));
        if (L_distant(x, y, L)) CHECK(fully_separated(bx, by));
    }
    CHECK(checked > 100);
}

TEST_CASE("L-distant predicate definition") {
    const RealCenter a(2, 1, {0.0, 1.0});
    const RealCenter b(2, 1, {0.0, 9.0});
    // dist(b, S_a^2) = max(0, 8) = 8; dist(a, S_b^2) = max(0, 1) = 1.
    CHECK(L_distant(a, b, 2.0));
    CHECK_FALSE(L_distant(a, b, 2.01));
}
