#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mpa/geometry/separation.hpp"
#include "mpa/resolvent/msa_check.hpp"

using namespace mpa;
using namespace mpa::model;
using namespace mpa::resolvent;
using geometry::ParticleRectangle;
using geometry::RealCenter;

namespace {

DisorderSample sample_for(const ModelParams& p, const ParticleRectangle& r, std::uint64_t seed, std::uint64_t idx) {
    return sample_disorder(p, geometry::LatticeBox::of(r).projection_hull(), seed, idx);
}

FiniteVolumeOperator random_box(std::mt19937_64& rng, int n, int d, double side, double lambda, std::uint64_t idx) {
    ModelParams p = default_params(n, d);
    p.lambda = lambda;
    RealCenter c(n, d);
    for (auto& v : c.x) v = static_cast<double>(static_cast<int>(rng() % 7) - 3);
    const auto r = ParticleRectangle::cube(c, side);
    return assemble(r, sample_for(p, r, 17, idx), p);
}

}  // namespace

TEST_CASE("single site resolvent is the scalar inverse") {
    ModelParams p = default_params(1, 1);
    p.lambda = 2.0;
    const auto r = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 1.0);
    const auto op = assemble(r, sample_for(p, r, 3, 0), p);
    const double h = op.H(0, 0);
    const auto g = green_entries(op, 0.25, {{0, 0}});
    CHECK(g[0] == doctest::Approx(1.0 / (h - 0.25)).epsilon(1e-15));
    CHECK(green_matrix(compute_spectrum(op, true), 0.25)(0, 0) == doctest::Approx(1.0 / (h - 0.25)).epsilon(1e-14));
}

TEST_CASE("column solves agree with the dense inverse and are symmetric") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 12; ++t) {
        const int n = 1 + t % 2;
        const int d = 1 + (t / 2) % 2;
        const auto op = random_box(rng, n, d, n == 1 ? 8.0 : (d == 1 ? 6.0 : 3.0), 3.0, static_cast<std::uint64_t>(t));
        REQUIRE(op.dim() <= 500);
        const double E = 1.3 + 0.1 * t;
        const Eigen::MatrixXd inv = green_inverse(op.H, E);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < op.dim(); a += 3)
            for (std::size_t b = 0; b < op.dim(); b += 2) pairs.emplace_back(a, b);
        const auto g = green_entries(op, E, pairs);
        double err = 0.0;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            err = std::max(err, std::abs(g[k] - inv(static_cast<Eigen::Index>(pairs[k].first),
                                                     static_cast<Eigen::Index>(pairs[k].second))));
        CHECK(err <= 1e-9);
        const Eigen::MatrixXd G = green_matrix(compute_spectrum(op, true), E);
        CHECK((G - inv).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((G - G.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("resolvent decays below the spectrum") {
    ModelParams p = default_params(1, 1);
    const auto r = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 12.0);
    const auto op = assemble(r, sample_for(p, r, 1, 0), p);
    const auto s = compute_spectrum(op, true);
    const double E = s.values.minCoeff() - 10.0;
    const auto g = green_entries(op, E, {{0, 1}, {0, op.dim() - 1}});
    CHECK(std::abs(g[1]) < std::abs(g[0]));
}

TEST_CASE("energies on the spectrum are refused") {
    ModelParams p = default_params(1, 1);
    const auto r = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 4.0);
    const auto op = assemble(r, sample_for(p, r, 1, 0), p);
    const auto s = compute_spectrum(op, true);
    CHECK_THROWS_AS(green_entries(op, s.values(2), {{0, 0}}), ResonantEnergy);
    CHECK_THROWS_AS(green_matrix(s, s.values(0)), ResonantEnergy);
    const auto snap = snapshot(op, s, s.values(1), 4.0);
    CHECK(snap.guarded);
    const auto rep = classify(snap, QualitySpec::regular(0.1));
    CHECK_FALSE(rep.verdict);
    CHECK(rep.guarded);
    CHECK_FALSE(classify(snap, QualitySpec::nonresonant(0.5)).verdict);
}

TEST_CASE("classifier verdicts follow the stored extremal data") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 40; ++t) {
        const double side = 4.0 + t % 5;
        const auto op = random_box(rng, 1 + t % 2, 1, side, 5.0, static_cast<std::uint64_t>(t));
        const auto snap = snapshot(op, compute_spectrum(op, true), 2.05 + 0.01 * t, side);
        for (const auto& q : {QualitySpec::suitable(1.5), QualitySpec::ses(0.4), QualitySpec::regular(0.7),
                              QualitySpec::suitably_nonresonant(2.0), QualitySpec::nonresonant(0.5),
                              QualitySpec::good(0.7, 0.5)}) {
            const auto rep = classify(snap, q);
            CHECK(rep.verdict == verdict_from_report(rep));
            if (rep.has_pair) CHECK(rep.r >= std::max(1.0, side / 100.0));
        }
        // Brute-force oracle for the regular predicate.
        const double m = 0.7;
        bool want = true;
        for (std::size_t i = 0; i < op.dim(); ++i)
            for (std::size_t j = 0; j < op.dim(); ++j) {
                const double r = op.site_distance(i, j);
                if (r >= 1.0 && std::abs(snap.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) >
                                    std::exp(-m * r))
                    want = false;
            }
        CHECK(classify(snap, QualitySpec::regular(m)).verdict == want);
    }
}

TEST_CASE("quality implications and monotonicity hold exactly") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.3, 1.7);
    int premises = 0;
    for (int t = 0; t < 150; ++t) {
        const double side = 3.0 + t % 6;
        const int n = 1 + t % 2;
        const auto op = random_box(rng, n, 1, side, 2.0 + t % 15, static_cast<std::uint64_t>(t));
        const auto snap = snapshot(op, compute_spectrum(op, true), -0.5 + 0.05 * t, side);
        const auto ach = achieved_exponents(snap);
        const double m = std::max(1e-3, ach.mass() * u(rng));
        const double theta = std::max(1e-3, ach.theta() * u(rng));
        const double zeta = std::clamp(ach.zeta() * u(rng), 0.05, 0.95);
        for (const auto& imp : quality_implications(snap, m, theta, zeta)) {
            CHECK(imp.holds());
            premises += imp.premise ? 1 : 0;
        }
        const bool reg = classify(snap, QualitySpec::regular(m)).verdict;
        if (reg) CHECK(classify(snap, QualitySpec::regular(m * 0.5)).verdict);
        const bool suit = classify(snap, QualitySpec::suitable(theta)).verdict;
        if (suit) CHECK(classify(snap, QualitySpec::suitable(theta * 0.5)).verdict);
        if (is_good(snap, m, 0.5)) CHECK(is_good(snap, m * 0.5, 0.5));
    }
    CHECK(premises > 100);
}

TEST_CASE("good boxes") {
    ModelParams p = default_params(1, 1);
    p.lambda = 0.0;
    p.interaction = Interaction::none(1);
    const auto r = ParticleRectangle::cube(RealCenter(1, 1, {0.0}), 10.0);
    const auto op = assemble(r, sample_for(p, r, 1, 0), p);
    const auto s = compute_spectrum(op, true);
    // Deep spectral gap: Combes-Thomas decay at a small mass.
    CHECK(is_good(snapshot(op, s, -4.0, 10.0), 0.5, 0.5));
    // On the spectrum: resonant, never good.
    CHECK_FALSE(is_good(snapshot(op, s, s.values(3) + 1e-9, 10.0), 1e-6, 0.5));
}

TEST_CASE("pi transfer: tensor identity and factor Green bound") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 16; ++t) {
        const int n = 2 + t % 2;
        const int d = 1 + (t / 2) % 2;
        const double side = n == 2 ? (d == 1 ? 6.0 : 2.0) : 2.0;
        ModelParams p = default_params(n, d);
        p.lambda = 4.0;
        p.diagonal_shift = t % 3 == 0 ? 0.5 : 0.0;
        RealCenter c(n, d);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) c(i, k) = (i == 0 ? 0.0 : 20.0 * i) + static_cast<double>(rng() % 3);
        if (n == 3) c(2, 0) = c(1, 0) + 1.0;  // particles 1 and 2 interact
        const auto box = ParticleRectangle::cube(c, side);
        const auto sample = sample_for(p, box, 9, static_cast<std::uint64_t>(t));
        const auto s = split_box(box, sample, p);
        // Oracle: the full matrix is the Kronecker sum after reindexing.
        const auto D = static_cast<Eigen::Index>(s.full.dim());
        double mismatch = 0.0;
        for (Eigen::Index a = 0; a < D; ++a)
            for (Eigen::Index b = 0; b < D; ++b) {
                const auto la = static_cast<Eigen::Index>(s.left_index[a]);
                const auto lb = static_cast<Eigen::Index>(s.left_index[b]);
                const auto ra = static_cast<Eigen::Index>(s.right_index[a]);
                const auto rb = static_cast<Eigen::Index>(s.right_index[b]);
                const double want = (ra == rb ? s.left.H(la, lb) : 0.0) + (la == lb ? s.right.H(ra, rb) : 0.0);
                mismatch = std::max(mismatch, std::abs(s.full.H(a, b) - want));
            }
        CHECK(mismatch <= 1e-12);

        const double E = 3.1 + 0.05 * t;
        const auto rep = pi_transfer_check(box, sample, p, E, {TransferMode::Regular, 0.3, 0.0});
        CHECK(rep.kronecker_mismatch <= kKroneckerTolerance);
        CHECK(rep.gj_excess <= kGreenBoundSlack);
        CHECK(rep.gjc_excess <= kGreenBoundSlack);
        CHECK(rep.target == 0.3 - 100.0 * n * d * std::log(side) / side);
        CHECK(rep.conclusion.spec.parameter == rep.target);
    }
}

TEST_CASE("pi transfer: free far clusters in a joint gap") {
    ModelParams p = default_params(2, 1);
    p.lambda = 0.0;
    const auto box = ParticleRectangle::cube(RealCenter(2, 1, {0.0, 30.0}), 8.0);
    const auto sample = sample_for(p, box, 1, 0);
    const auto rep = pi_transfer_check(box, sample, p, -1.0, {TransferMode::Suitable, 1.0, 0.0});
    CHECK(rep.J == std::vector<int>{0});
    CHECK(rep.Jc == std::vector<int>{1});
    CHECK(rep.gj_excess <= kGreenBoundSlack);
    CHECK(rep.gjc_excess <= kGreenBoundSlack);
    CHECK(transfer_target({TransferMode::Suitable, 3.0, 0.0}, 2, 1, 8.0) == 1.5);
    CHECK(transfer_target({TransferMode::Ses, 0.5, 0.4}, 2, 1, 8.0) == 0.4);
    const auto fi = ParticleRectangle::cube(RealCenter(2, 1, {0.0, 1.0}), 4.0);
    CHECK_THROWS_AS(pi_transfer_check(fi, sample_for(p, fi, 1, 0), p, -1.0, {}), ContractError);
}

TEST_CASE("pairwise family search against subset enumeration") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 60; ++t) {
        const std::size_t count = 1 + rng() % 11;
        std::vector<std::vector<bool>> adj(count, std::vector<bool>(count, false));
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) adj[i][j] = adj[j][i] = (rng() % 3) != 0;
        std::size_t want = 0;
        for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
            bool ok = true;
            for (std::size_t i = 0; i < count && ok; ++i)
                for (std::size_t j = i + 1; j < count && ok; ++j)
                    if ((mask >> i & 1) && (mask >> j & 1) && !adj[i][j]) ok = false;
            if (ok) want = std::max<std::size_t>(want, static_cast<std::size_t>(std::popcount(mask)));
        }
        const auto f = [&](std::size_t i, std::size_t j) { return static_cast<bool>(adj[i][j]); };
        CHECK(max_pairwise_family(count, f, count + 1) == want);
        CHECK(max_pairwise_family(count, f, 2) == std::min<std::size_t>(want, 2));
    }
    CHECK(max_pairwise_family(0, [](std::size_t, std::size_t) { return true; }, 5) == 0);
}

TEST_CASE("multiscale sub-boxes match the nesting membership oracle") {
    const geometry::SuitableCover cover(26.0, 2.0, RealCenter(1, 1, {0.0}));
    const auto subs = multiscale_subboxes(cover, 3);
    const auto k = geometry::k_multipliers(3, cover);
    std::size_t want = 0;
    for (const auto& c : cover.centers())
        for (int j = 1; j <= 3; ++j) {
            const double K = 2.0 * static_cast<double>(k[j - 1]) * cover.alpha() + 1.0;
            const double center = cover.center(c).x[0];
            const double half = K * cover.ell() / 2.0;
            // Inside the parent [-13, 13] exactly when the integer range stays inside.
            const auto lo = static_cast<std::int64_t>(std::ceil(center - half));
            const auto hi = static_cast<std::int64_t>(std::floor(center + half));
            if (lo >= -13 && hi <= 13) ++want;
        }
    CHECK(subs.size() == want);
    CHECK(want == 5);
    for (const auto& s : subs) {
        CHECK(s.j == 1);
        CHECK(s.side == doctest::Approx(20.0));
        CHECK(s.box.range(0).extent() >= 20);
        CHECK(s.box.range(0).extent() <= 21);
    }
}

TEST_CASE("msa check reports both sides") {
    ModelParams p = default_params(1, 1);
    p.lambda = 20.0;
    const RealCenter x(1, 1, {0.0});
    const auto parent = ParticleRectangle::cube(x, 36.0);
    const auto sample = sample_for(p, parent, 11, 0);
    MsaSpec spec;
    spec.mode = MsaMode::Regular;
    spec.m_ell = 0.05;
    spec.kappa = 0.5;
    spec.beta = 0.5;
    spec.J = 0;
    const auto rep = msa_deterministic_check(x, 36.0, 6.0, sample, p, -50.0, spec);
    // Far below the spectrum every cover box is regular: zero bad boxes satisfy any J >= 0.
    CHECK(rep.bad_cover_boxes == 0);
    CHECK(rep.count_ok);
    CHECK(rep.parent_nonresonant);
    CHECK(rep.hypotheses());
    CHECK(rep.target == doctest::Approx(0.05 - 0.5 / std::sqrt(6.0)));
    CHECK(rep.conclusion.verdict);
    CHECK(rep.achieved > 0.0);
    CHECK(rep.cover_boxes == geometry::SuitableCover(36.0, 6.0, x).size());
}

TEST_CASE("energy shift width and grid verification") {
    CHECK(energy_shift_eta(1.0, 10.0, 0.8) == 0.5 * std::exp(-10.0 - 2.0 * std::pow(10.0, 0.8)));
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        const double side = 4.0 + t % 4;
        const auto op = random_box(rng, 1 + t % 2, 1, side, 8.0, static_cast<std::uint64_t>(t));
        const auto s = compute_spectrum(op, true);
        const double E0 = -1.0 + 0.3 * t;
        const auto snap = snapshot(op, s, E0, side);
        if (snap.guarded) continue;
        const double m = 0.9 * achieved_exponents(snap).mass();
        if (!(m > 0.0)) continue;
        const auto rep = energy_shift_check(op, s, side, E0, m, 0.6);
        if (!rep.preconditions()) continue;
        ++checked;
        CHECK(rep.grid.size() == 21);
        CHECK(rep.grid[10] == E0);
        CHECK(rep.all_good());
        CHECK(rep.target_mass == m - 100.0 * std::log(2.0) / side);
    }
    CHECK(checked >= 10);
}

TEST_CASE("preregular and highly nonresonant predicates") {
    ModelParams p = default_params(2, 1);
    p.lambda = 3.0;
    const auto box = ParticleRectangle::cube(RealCenter(2, 1, {0.0, 40.0}), 26.0);
    const auto sample = sample_for(p, box, 2, 0);
    PreregularSpec spec;
    spec.m_star = 0.05;
    spec.beta = 0.5;
    spec.c1 = spec.c2 = spec.c3 = 0.01;

    // Far below every shifted spectrum: no bad cover boxes, no resonances.
    const auto far = preregular_and_hnr_check(box, sample, p, -100.0, 2.0, spec);
    CHECK(far.lregular);
    CHECK(far.rregular);
    CHECK(far.hnr());
    REQUIRE(far.has_conclusion);
    CHECK(far.mass == doctest::Approx(preregular_mass(spec, 26.0, 2.0)));
    CHECK(far.conclusion.spec.parameter == far.mass);

    // Put E on a product eigenvalue of a sub-box on the right: a witness must exist and check out.
    const auto s = split_box(box, sample, p);
    const geometry::SuitableCover rc(26.0, 2.0, box.factor(s.Jc).center);
    const auto subs = multiscale_subboxes(rc, 1);
    REQUIRE(!subs.empty());
    const auto sub_values = compute_spectrum(restrict_to(s.right, subs.front().box), false).values;
    const auto left_values = compute_spectrum(s.left, false).values;
    const double E = sub_values(3) + left_values(5);
    const auto rep = preregular_and_hnr_check(box, sample, p, E, 2.0, spec);
    REQUIRE(rep.right_resonant.found);
    CHECK_FALSE(rep.rnr);
    CHECK_FALSE(rep.hnr());
    CHECK_FALSE(rep.has_conclusion);
    const auto w = restrict_to(s.full, rep.right_resonant.box);
    const double dist = spectral_distance(compute_spectrum(w, false).values, E);
    CHECK(dist < resonance_threshold(rep.right_resonant.small_side, 0.5));
    CHECK(rep.right_resonant.threshold <= 0.5 * std::exp(-std::pow(2.0, 0.5)));
}
