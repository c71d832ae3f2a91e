#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mpa/model/hamiltonian.hpp"

using namespace mpa;
using namespace mpa::model;
using geometry::ParticleRectangle;
using geometry::RealCenter;

namespace {

// Asymptotic Kolmogorov survival function P(K > t).
double kolmogorov_survival(double t) {
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) s += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * t * t);
    return std::clamp(s, 0.0, 1.0);
}

double ks_pvalue(std::vector<double> xs, const Density& rho) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double D = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = rho.cdf(xs[i]);
        D = std::max({D, (i + 1) / n - F, F - i / n});
    }
    return kolmogorov_survival(std::sqrt(n) * D);
}

ModelParams free_params(int n, int d) {
    ModelParams p = default_params(n, d);
    p.lambda = 0.0;
    p.interaction = Interaction::none(d);
    return p;
}

DisorderSample sample_for(const ModelParams& p, const ParticleRectangle& r, std::uint64_t seed, std::uint64_t idx) {
    return sample_disorder(p, geometry::LatticeBox::of(r).projection_hull(), seed, idx);
}

}  // namespace

TEST_CASE("free chain matches the Dirichlet closed form") {
    for (int m : {1, 2, 5, 9, 16}) {
        const auto p = free_params(1, 1);
        const auto r = ParticleRectangle::cube(RealCenter(1, 1, {0.5 * (m - 1)}), std::max(m - 1, 1));
        const auto op = assemble(r, sample_for(p, r, 1, 0), p);
        REQUIRE(op.dim() == static_cast<std::size_t>(m));
        const auto s = compute_spectrum(op, true);
        std::vector<double> want;
        for (int k = 1; k <= m; ++k) want.push_back(2.0 - 2.0 * std::cos(k * std::numbers::pi / (m + 1)));
        std::sort(want.begin(), want.end());
        for (int k = 0; k < m; ++k) CHECK(s.values(k) == doctest::Approx(want[k]).epsilon(1e-12));
        CHECK(s.residual <= 1e-12);
    }
}

TEST_CASE("noninteracting two-particle spectrum is the sum of one-particle spectra") {
    const auto p2 = free_params(2, 1);
    const auto r2 = ParticleRectangle(RealCenter(2, 1, {0.0, 10.0}), {4.0, 6.0});
    const auto op2 = assemble(r2, sample_for(p2, r2, 1, 0), p2);
    const auto s2 = compute_spectrum(op2, false);
    std::vector<double> want;
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 7; ++b)
            want.push_back(4.0 - 2.0 * std::cos(a * std::numbers::pi / 6) - 2.0 * std::cos(b * std::numbers::pi / 8));
    std::sort(want.begin(), want.end());
    REQUIRE(static_cast<std::size_t>(s2.values.size()) == want.size());
    for (std::size_t k = 0; k < want.size(); ++k)
        CHECK(s2.values(static_cast<Eigen::Index>(k)) == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("matrix entries follow the definition") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int d = 1 + static_cast<int>(rng() % 2);
        ModelParams p = default_params(n, d);
        p.lambda = 0.5 + static_cast<double>(rng() % 5);
        p.diagonal_shift = (t % 3 == 0) ? 0.25 : 0.0;
        RealCenter c(n, d);
        for (auto& v : c.x) v = static_cast<double>(static_cast<int>(rng() % 5) - 2);
        const auto r = ParticleRectangle::cube(c, 1.0 + static_cast<double>(rng() % 3));
        const auto sample = sample_for(p, r, 99, static_cast<std::uint64_t>(t));
        const auto op = assemble(r, sample, p);
        const DisorderField field(p.density, 99, static_cast<std::uint64_t>(t));
        CHECK(op.H.isApprox(op.H.transpose(), 0.0));
        for (std::size_t i = 0; i < op.dim(); ++i) {
            const auto* x = op.point(i);
            double want = 2.0 * n * d + p.diagonal_shift;
            for (int a = 0; a < n; ++a) want += p.lambda * field(std::span<const Coord>(x + a * d, d));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    Coord m = 0;
                    for (int k = 0; k < d; ++k) m = std::max(m, std::abs(x[a * d + k] - x[b * d + k]));
                    want += m <= 1 ? 1.0 : 0.0;
                }
            CHECK(op.H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) == doctest::Approx(want).epsilon(1e-15));
            for (std::size_t j = 0; j < op.dim(); ++j) {
                if (i == j) continue;
                Coord l1 = 0;
                for (int k = 0; k < n * d; ++k) l1 += std::abs(x[k] - op.point(j)[k]);
                CHECK(op.H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == (l1 == 1 ? -1.0 : 0.0));
            }
        }
        // Gershgorin enclosure
        const auto s = compute_spectrum(op, false);
        const double lo = op.H.diagonal().minCoeff() - 2.0 * n * d;
        const double hi = op.H.diagonal().maxCoeff() + 2.0 * n * d;
        CHECK(s.values.minCoeff() >= lo - 1e-12);
        CHECK(s.values.maxCoeff() <= hi + 1e-12);
    }
}

TEST_CASE("single site and interaction worked values") {
    ModelParams p = default_params(1, 2);
    p.lambda = 3.0;
    const auto r = ParticleRectangle::cube(RealCenter(1, 2, {0.0, 0.0}), 1.0);
    const auto sample = sample_for(p, r, 5, 2);
    const auto op = assemble(r, sample, p);
    REQUIRE(op.dim() == 1);
    const std::vector<Coord> origin = {0, 0};
    CHECK(op.H(0, 0) == doctest::Approx(4.0 + 3.0 * sample.at(origin)));

    const auto U = Interaction::step(1, 1.0, 1.0);
    CHECK(U(std::vector<Coord>{0}) == 1.0);
    CHECK(U(std::vector<Coord>{1}) == 1.0);
    CHECK(U(std::vector<Coord>{-1}) == 1.0);
    CHECK(U(std::vector<Coord>{2}) == 0.0);
    CHECK_THROWS_AS(Interaction::table(1, 1.0, {{{1}, 1.0}, {{-1}, 2.0}}), ContractError);
    CHECK_THROWS_AS(Interaction::table(1, 1.0, {{{2}, 1.0}, {{-2}, 1.0}}), ContractError);
}

TEST_CASE("restriction equals fresh assembly on the same sample") {
    ModelParams p = default_params(2, 1);
    p.lambda = 2.0;
    const auto big = ParticleRectangle::cube(RealCenter(2, 1, {0.0, 3.0}), 8.0);
    const auto sub = ParticleRectangle(RealCenter(2, 1, {1.0, 2.0}), {4.0, 2.0});
    const auto sample = sample_for(p, big, 8, 1);
    const auto op = assemble(big, sample, p);
    const auto a = restrict_to(op, sub);
    const auto b = assemble(sub, sample, p);
    CHECK(a.H == b.H);
    CHECK(a.coords == b.coords);
    CHECK_THROWS_AS(restrict_to(op, ParticleRectangle::cube(RealCenter(2, 1, {20.0, 3.0}), 2.0)), ContractError);
}

TEST_CASE("disorder stream is counter based and has the right law") {
    const std::vector<Coord> s1 = {3, -4};
    const DisorderField f(Density::uniform(0, 1), 42, 7);
    CHECK(f(s1) == DisorderField(Density::uniform(0, 1), 42, 7)(s1));
    CHECK(f(s1) != DisorderField(Density::uniform(0, 1), 42, 8)(s1));
    CHECK(f(s1) != DisorderField(Density::uniform(0, 1), 43, 7)(s1));

    for (const auto& rho : {Density::uniform(0, 1), Density::uniform(-1, 1), Density::triangular(0, 1)}) {
        std::vector<double> xs;
        const DisorderField g(rho, 2024, 0);
        for (Coord x = 0; x < 200; ++x)
            for (Coord y = 0; y < 200; ++y) {
                const std::vector<Coord> site = {x, y};
                xs.push_back(g(site));
            }
        for (double v : xs) {
            CHECK(v >= rho.lo);
            CHECK(v <= rho.hi);
        }
        CHECK(ks_pvalue(xs, rho) > 1e-3);
    }
    CHECK(Density::uniform(0, 1).sup() == 1.0);
    CHECK(Density::uniform(-1, 1).sup() == 0.5);
    CHECK(Density::triangular(0, 1).sup() == 2.0);
    ModelParams p = default_params(1, 1);
    p.lambda = 4.0;
    CHECK(p.effective_density_sup() == 0.25);
}

TEST_CASE("sample values do not depend on the sampled region") {
    ModelParams p = default_params(1, 1);
    const auto small = geometry::LatticeBox(1, 1, {{0, 5}});
    const auto large = geometry::LatticeBox(1, 1, {{-10, 20}});
    const auto a = sample_disorder(p, small, 3, 4);
    const auto b = sample_disorder(p, large, 3, 4);
    for (Coord x = 0; x <= 5; ++x) {
        const std::vector<Coord> s = {x};
        CHECK(a.at(s) == b.at(s));
    }
}

TEST_CASE("coo dump round-trips exactly") {
    ModelParams p = default_params(2, 1);
    const auto r = ParticleRectangle::cube(RealCenter(2, 1, {0.0, 1.0}), 3.0);
    const auto op = assemble(r, sample_for(p, r, 1, 1), p);
    std::stringstream ss;
    write_coo(ss, op);
    Eigen::MatrixXd back = Eigen::MatrixXd::Zero(op.H.rows(), op.H.cols());
    Eigen::Index i, j;
    std::string v;
    while (ss >> i >> j >> v) {
        back(i, j) = std::stod(v);
        back(j, i) = back(i, j);
    }
    CHECK(back == op.H);
}

TEST_CASE("caps and clusters") {
    ModelParams p = default_params(2, 2);
    const auto r = ParticleRectangle::cube(RealCenter(2, 2, {0, 0, 0, 0}), 8.0);
    CHECK_THROWS_AS(assemble(r, DisorderField(p.density, 1, 0), p), CapExceeded);
    Eigen::VectorXd v(5);
    v << 0.0, 1e-12, 1.0, 1.0 + 5e-10, 2.0;
    const auto c = eigenvalue_clusters(v);
    REQUIRE(c.size() == 3);
    CHECK(c[0].size() == 2);
    CHECK(c[1].size() == 2);
    CHECK(spectral_distance(v, 1.5) == doctest::Approx(0.5 - 5e-10));
}
