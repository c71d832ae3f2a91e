#include <algorithm>
#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "mpa/localization/diagnostics.hpp"

using namespace mpa;
using namespace mpa::localization;
using geometry::ParticleRectangle;
using geometry::RealCenter;

namespace {

FiniteVolumeOperator make_box(int n, int d, double side, double lambda, std::uint64_t idx) {
    auto p = model::default_params(n, d);
    p.lambda = lambda;
    const auto r = ParticleRectangle::cube(RealCenter(n, d), side);
    return model::assemble(r, model::sample_disorder(p, geometry::LatticeBox::of(r).projection_hull(), 23, idx), p);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_CASE("free box eigenvectors are spread out") {
    const auto op = make_box(1, 1, 21, 0.0, 0);
    const auto sp = model::compute_spectrum(op, true);
    const auto profiles = decay_profiles(op, sp);
    REQUIRE(profiles.size() == op.dim());
    std::vector<double> slopes;
    for (const auto& p : profiles) {
        CHECK(p.norm == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::isfinite(p.slope));
        slopes.push_back(p.slope);
    }
    CHECK(median(slopes) < 0.1);
    CHECK(parseval_defect(sp) < 1e-8);
}

TEST_CASE("a potential spike binds a decaying state at the spike") {
    auto op = make_box(1, 1, 21, 0.0, 0);
    const std::size_t s = 7;
    op.H(s, s) += 50.0;
    const auto sp = model::compute_spectrum(op, true);
    const auto top = decay_profile(op, sp, op.dim() - 1);
    CHECK(top.center == s);
    CHECK(top.slope >= 1.0);
    // Every point above the floor is in the profile.
    const auto psi = sp.vectors.col(static_cast<Eigen::Index>(op.dim() - 1));
    CHECK(top.points.size() == static_cast<std::size_t>((psi.array().abs() > kProfileFloor).count()));
}

TEST_CASE("center tie-break picks the lowest index") {
    const auto op = make_box(1, 1, 5, 0.0, 0);
    model::Spectrum sp;
    sp.values = Eigen::VectorXd::Zero(1);
    sp.vectors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(op.dim()), 1);
    sp.vectors(1, 0) = sp.vectors(3, 0) = std::sqrt(0.5);
    sp.has_vectors = true;
    CHECK(decay_profile(op, sp, 0).center == 1);
}

TEST_CASE("site Hausdorff distance") {
    const auto op = make_box(2, 1, 5, 0.0, 0);
    std::mt19937_64 rng(4);
    for (int it = 0; it < 200; ++it) {
        const std::size_t i = rng() % op.dim(), j = rng() % op.dim();
        geometry::ConfigPoint a(2, 1, {op.point(i)[0], op.point(i)[1]});
        geometry::ConfigPoint b(2, 1, {op.point(j)[0], op.point(j)[1]});
        CHECK(site_hausdorff(op, i, j) == geometry::hausdorff(a, b));
    }
}

TEST_CASE("correlator bounds the evolution") {
    const auto op = make_box(2, 1, 5, 2.0, 1);
    const auto sp = model::compute_spectrum(op, true);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t x = 0; x < op.dim(); x += 3) pairs.push_back({x, (x * 7 + 2) % op.dim()});
    const auto lo = sp.values(0) - 1, hi = sp.values(sp.values.size() - 1) + 1;

    const auto full = kernel_estimate(op, sp, lo, hi, pairs, {0.0, 0.7, 3.1});
    for (const auto& e : full.entries) {
        // With I covering the spectrum the evolution is e^{-itH}; compare with a matrix exponential.
        double amp = 0.0;
        for (double t : {0.0, 0.7, 3.1}) {
            const Eigen::MatrixXcd U = (std::complex<double>(0, -t) * op.H.cast<std::complex<double>>()).exp();
            amp = std::max(amp, std::abs(U(static_cast<Eigen::Index>(e.x), static_cast<Eigen::Index>(e.y))));
        }
        CHECK(e.max_amplitude == doctest::Approx(amp).epsilon(1e-9));
        CHECK(e.max_amplitude <= e.correlator + 1e-9);
        if (e.x == e.y) CHECK(e.correlator == doctest::Approx(1.0));
    }
    const auto at0 = kernel_estimate(op, sp, lo, hi, {{4, 4}, {4, 5}}, {0.0});
    CHECK(at0.entries[0].max_amplitude == doctest::Approx(1.0));
    CHECK(at0.entries[1].max_amplitude == doctest::Approx(0.0).epsilon(1e-12));

    const double mid = sp.values(static_cast<Eigen::Index>(op.dim() / 2));
    const auto part = kernel_estimate(op, sp, mid - 1, mid + 1, pairs, default_time_samples());
    CHECK(part.max_violation <= 1e-9);
    const auto swapped = [&] {
        auto p = pairs;
        for (auto& [a, b] : p) std::swap(a, b);
        return kernel_estimate(op, sp, mid - 1, mid + 1, p, {0.0});
    }();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        CHECK(swapped.entries[k].correlator == doctest::Approx(part.entries[k].correlator));
        if (pairs[k].first == pairs[k].second) CHECK(part.entries[k].correlator <= 1.0 + 1e-12);
    }
}

TEST_CASE("kernel decays with distance at strong disorder") {
    const auto op = make_box(1, 1, 15, 20.0, 3);
    const auto sp = model::compute_spectrum(op, true);
    const auto bins = kernel_by_distance(op, sp, -1e9, 1e9);
    double q2 = -1, q6 = -1;
    std::size_t total = 0;
    for (const auto& b : bins) {
        total += b.pairs;
        if (b.distance == 2) q2 = b.median;
        if (b.distance == 6) q6 = b.median;
    }
    CHECK(total == op.dim() * (op.dim() + 1) / 2);
    REQUIRE(q2 > 0);
    CHECK(q6 < 0.1 * q2);
}

TEST_CASE("sudec ordering and the generalized eigenproblem") {
    SUBCASE("random disordered boxes") {
        for (std::uint64_t s = 0; s < 6; ++s) {
            const auto op = make_box(s % 2 ? 2 : 1, 1, 6, 3.0, s);
            const auto sp = model::compute_spectrum(op, true);
            for (const auto& c : spectral_clusters(sp)) {
                for (std::size_t a = 0; a < op.dim(); a += 2) {
                    const auto v = sudec_values(op, sp, c, a);
                    CHECK(v.Z >= 0.0);
                    CHECK(v.Z <= v.W + 1e-10);
                    CHECK(v.W <= 1.0 + 1e-10);
                    if (c.size() == 1) CHECK(v.Z == doctest::Approx(v.W).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("degenerate clusters") {
        const auto op = make_box(1, 2, 5, 0.0, 0);  // free square: E_jk = E_kj
        const auto sp = model::compute_spectrum(op, true);
        std::mt19937_64 rng(8);
        std::normal_distribution<double> g;
        int degenerate = 0;
        for (const auto& c : spectral_clusters(sp)) {
            if (c.size() < 2) continue;
            ++degenerate;
            Eigen::MatrixXd V(sp.vectors.rows(), static_cast<Eigen::Index>(c.size()));
            for (std::size_t k = 0; k < c.size(); ++k) V.col(k) = sp.vectors.col(c[k]);
            for (std::size_t a = 0; a < op.dim(); ++a) {
                const auto v = sudec_values(op, sp, c, a);
                CHECK(v.degenerate);
                CHECK(v.multiplicity == c.size());
                // W^2 = u^T B^{-1} u for the rank-one numerator.
                Eigen::VectorXd w(V.rows());
                for (Eigen::Index x = 0; x < V.rows(); ++x) {
                    const double r = op.site_distance(x, a);
                    w(x) = std::pow(1 + r * r, -v.nu);
                }
                const Eigen::MatrixXd B = V.transpose() * w.asDiagonal() * V;
                const Eigen::VectorXd u = V.row(a).transpose();
                CHECK(v.W * v.W == doctest::Approx(u.dot(B.ldlt().solve(u))).epsilon(1e-9));
                CHECK(v.Z <= v.W + 1e-10);
                CHECK(v.W <= 1.0 + 1e-10);
            }
            for (int it = 0; it < 20; ++it) {
                Eigen::VectorXd phi(c.size()), psi(c.size());
                for (auto& z : phi) z = g(rng);
                for (auto& z : psi) z = g(rng);
                CHECK(sudec_pair_check(op, sp, c, rng() % op.dim(), rng() % op.dim(), phi, psi).holds());
            }
        }
        CHECK(degenerate > 0);
    }
    const auto op = make_box(2, 1, 4, 0.0, 0);
    CHECK(sudec_nu(op) == 1.5);
}
