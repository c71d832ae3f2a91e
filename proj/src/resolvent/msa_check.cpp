#include "mpa/resolvent/msa_check.hpp"

#include <cmath>

#include "mpa/geometry/separation.hpp"

namespace mpa::resolvent {

std::string to_string(MsaMode mode) {
    switch (mode) {
        case MsaMode::Suitable: return "suitable";
        case MsaMode::Regular: return "regular";
        case MsaMode::Ses: return "ses";
    }
    return "unknown";
}

std::size_t max_pairwise_family(std::size_t count, const std::function<bool(std::size_t, std::size_t)>& adjacent,
                                std::size_t cap) {
    std::size_t best = 0;
    std::function<void(const std::vector<std::size_t>&, std::size_t)> grow = [&](const std::vector<std::size_t>& cand,
                                                                                 std::size_t depth) {
        best = std::max(best, depth);
        for (std::size_t i = 0; i < cand.size() && best < cap; ++i) {
            if (depth + (cand.size() - i) <= best) return;
            std::vector<std::size_t> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (adjacent(cand[i], cand[j])) next.push_back(cand[j]);
            grow(next, depth + 1);
        }
    };
    std::vector<std::size_t> all(count);
    for (std::size_t i = 0; i < count; ++i) all[i] = i;
    grow(all, 0);
    return std::min(best, cap);
}

std::vector<SubBox> multiscale_subboxes(const geometry::SuitableCover& cover, int count) {
    std::vector<SubBox> out;
    if (count < 1) return out;
    const auto k = geometry::k_multipliers(count, cover);
    const int N = cover.n();
    for (const auto& c : cover.centers())
        for (int j = 1; j <= count; ++j) {
            auto box = cover.scaled_box(c, k[j - 1] * N);
            if (!box.subset_of(cover.parent())) break;
            const double K = 2.0 * static_cast<double>(k[j - 1]) * N * cover.alpha() + 1.0;
            out.push_back({c, j, K * cover.ell(), std::move(box)});
        }
    return out;
}

namespace {

int power(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

QualitySpec cover_quality(const MsaSpec& spec) {
    switch (spec.mode) {
        case MsaMode::Suitable: return QualitySpec::suitable(spec.theta);
        case MsaMode::Regular: return QualitySpec::regular(spec.m_ell);
        case MsaMode::Ses: return QualitySpec::ses(spec.zeta0);
    }
    return {};
}

bool nonresonant_at(const MsaSpec& spec, double side, double dist) {
    if (spec.mode == MsaMode::Suitable) return dist >= suitable_resonance_threshold(side, spec.s);
    return dist >= resonance_threshold(side, spec.beta);
}

}  // namespace

MsaCheckReport msa_deterministic_check(const geometry::RealCenter& x, double L, double ell,
                                       const model::DisorderSample& sample, const model::ModelParams& params,
                                       double E, const MsaSpec& spec) {
    if (x.n != params.n || x.d != params.d) throw ContractError("msa_check: center shape differs from model");
    if (spec.J < 0) throw ContractError("msa_check: J must be >= 0");
    const geometry::SuitableCover cover(L, ell, x);
    const auto parent = geometry::ParticleRectangle::cube(x, L);
    const auto op = model::assemble(parent, sample, params);
    const auto spectrum = model::compute_spectrum(op, true);

    MsaCheckReport rep;
    rep.mode = spec.mode;
    rep.L = L;
    rep.ell = ell;
    rep.alpha = cover.alpha();
    rep.J = spec.J;
    rep.parent_nonresonant = nonresonant_at(spec, L, model::spectral_distance(spectrum.values, E));

    rep.subboxes_nonresonant = true;
    for (const auto& sub : multiscale_subboxes(cover, spec.J * power(params.n, params.n))) {
        const auto values = model::compute_spectrum(model::restrict_to(op, sub.box), false).values;
        ++rep.subboxes_checked;
        if (!nonresonant_at(spec, sub.side, model::spectral_distance(values, E))) rep.subboxes_nonresonant = false;
    }

    const QualitySpec cq = cover_quality(spec);
    const auto centers = cover.centers();
    std::vector<geometry::LatticeIndex> bad;
    for (const auto& c : centers) {
        const auto sub = model::restrict_to(op, cover.member_box(c));
        if (!classify(snapshot(sub, model::compute_spectrum(sub, true), E, ell), cq).verdict) bad.push_back(c);
    }
    rep.cover_boxes = centers.size();
    rep.bad_cover_boxes = bad.size();
    rep.distant_bad = max_pairwise_family(
        bad.size(), [&](std::size_t i, std::size_t j) { return cover.ell_distant(bad[i], bad[j]); },
        static_cast<std::size_t>(spec.J) + 1);
    rep.count_ok = rep.distant_bad <= static_cast<std::size_t>(spec.J);

    QualitySpec target = cq;
    if (spec.mode == MsaMode::Regular) target.parameter = spec.m_ell - 0.5 * std::pow(ell, -spec.kappa);
    rep.target = target.parameter;
    const auto snap = snapshot(op, spectrum, E, L);
    rep.conclusion = classify(snap, target);
    const auto ach = achieved_exponents(snap);
    rep.achieved = spec.mode == MsaMode::Suitable ? ach.theta() : spec.mode == MsaMode::Regular ? ach.mass() : ach.zeta();
    return rep;
}

double energy_shift_eta(double m, double L, double beta) { return 0.5 * std::exp(-m * L - 2.0 * std::pow(L, beta)); }

bool EnergyShiftReport::all_good() const {
    return !good.empty() && std::all_of(good.begin(), good.end(), [](bool g) { return g; });
}

EnergyShiftReport energy_shift_check(const FiniteVolumeOperator& op, const Spectrum& spectrum, double side, double E0,
                                     double m, double beta, int points) {
    if (points < 1) throw ContractError("energy_shift: need at least one grid point");
    EnergyShiftReport rep;
    rep.E0 = E0;
    rep.m = m;
    rep.beta = beta;
    rep.side = side;
    rep.eta = energy_shift_eta(m, side, beta);
    rep.target_mass = m - 100.0 * std::log(2.0) / side;
    const double dist = model::spectral_distance(spectrum.values, E0);
    rep.pre_norm = dist >= std::exp(-std::pow(side, beta));
    rep.pre_regular = classify(snapshot(op, spectrum, E0, side), QualitySpec::regular(m)).verdict;
    if (!rep.preconditions()) return rep;
    for (int k = 0; k < points; ++k) {
        const double E = E0 - rep.eta + 2.0 * rep.eta * (k + 1) / (points + 1);
        rep.grid.push_back(E);
        rep.good.push_back(is_good(snapshot(op, spectrum, E, side), rep.target_mass, beta));
    }
    return rep;
}

double preregular_mass(const PreregularSpec& spec, double L, double ell) {
    const double gamma = spec.gamma > 0.0 ? spec.gamma : std::log(L) / std::log(ell);
    return spec.m_star - spec.c1 * std::pow(ell, 1.0 - gamma) - spec.c2 * std::pow(ell, 1.0 - spec.beta) -
           spec.c3 * std::log(L) / L;
}

namespace {

struct FactorSide {
    const FiniteVolumeOperator* op;
    geometry::RealCenter center;
    const std::vector<int>* particles;
};

std::vector<double> distinct(const Eigen::VectorXd& values) {
    std::vector<double> out;
    for (const auto& c : model::eigenvalue_clusters(values, kKroneckerTolerance)) {
        double s = 0.0;
        for (auto k : c) s += values(static_cast<Eigen::Index>(k));
        out.push_back(s / static_cast<double>(c.size()));
    }
    return out;
}

// Two partially separated cover boxes of the factor, both (m*, E - shift)-nonregular.
RegularityWitness irregular_pair(const FactorSide& f, const std::vector<double>& shifts, double E, double L,
                                 double ell, double m_star) {
    RegularityWitness w;
    const geometry::SuitableCover cover(L, ell, f.center);
    const auto centers = cover.centers();
    std::vector<FiniteVolumeOperator> ops;
    std::vector<Spectrum> specs;
    std::vector<geometry::LatticeBox> boxes;
    for (const auto& c : centers) {
        boxes.push_back(cover.member_box(c));
        ops.push_back(model::restrict_to(*f.op, boxes.back()));
        specs.push_back(model::compute_spectrum(ops.back(), true));
    }
    for (double mu : shifts) {
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < centers.size(); ++i)
            if (!classify(snapshot(ops[i], specs[i], E - mu, ell), QualitySpec::regular(m_star)).verdict)
                bad.push_back(i);
        for (std::size_t a = 0; a < bad.size(); ++a)
            for (std::size_t b = a + 1; b < bad.size(); ++b)
                if (geometry::partially_separated(boxes[bad[a]], boxes[bad[b]])) {
                    w.found = true;
                    w.shift = mu;
                    w.first = centers[bad[a]];
                    w.second = centers[bad[b]];
                    return w;
                }
    }
    return w;
}

// Smallest-distance resonant product box with the small box on this factor.
ResonanceWitness resonant_product(const FactorSide& f, const FiniteVolumeOperator& full, const Eigen::VectorXd& other,
                                  double E, double L, double ell, double beta, bool right) {
    ResonanceWitness w;
    w.right = right;
    const geometry::SuitableCover cover(L, ell, f.center);
    const int N = cover.n();
    for (const auto& sub : multiscale_subboxes(cover, power(N, N))) {
        const auto values = model::compute_spectrum(model::restrict_to(*f.op, sub.box), false).values;
        double dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < values.size(); ++i)
            for (Eigen::Index j = 0; j < other.size(); ++j) dist = std::min(dist, std::abs(values(i) + other(j) - E));
        const double thr = resonance_threshold(sub.side, beta);
        if (dist < thr && (!w.found || dist < w.dist)) {
            w.found = true;
            w.center = sub.center;
            w.j = sub.j;
            w.small_side = sub.side;
            w.dist = dist;
            w.threshold = thr;
            std::vector<geometry::AxisRange> ranges = full.lattice.ranges();
            const int d = full.lattice.d();
            const auto& parts = *f.particles;
            for (std::size_t p = 0; p < parts.size(); ++p)
                for (int k = 0; k < d; ++k)
                    ranges[static_cast<std::size_t>(parts[p] * d + k)] = sub.box.range(static_cast<int>(p) * d + k);
            w.box = geometry::LatticeBox(full.lattice.n(), d, ranges);
        }
    }
    return w;
}

}  // namespace

PreregularReport preregular_and_hnr_check(const geometry::ParticleRectangle& box, const model::DisorderSample& sample,
                                          const model::ModelParams& params, double E, double ell,
                                          const PreregularSpec& spec) {
    if (!box.is_cube()) throw ContractError("preregular: box must be a cube");
    const SplitBox s = split_box(box, sample, params);
    const double L = box.min_side();
    const Spectrum full = model::compute_spectrum(s.full, true);
    const Spectrum left = model::compute_spectrum(s.left, false);
    const Spectrum right = model::compute_spectrum(s.right, false);

    PreregularReport rep;
    rep.J = s.J;
    rep.Jc = s.Jc;
    rep.E = E;
    rep.L = L;
    rep.ell = ell;
    const FactorSide lf{&s.left, box.factor(s.J).center, &s.J};
    const FactorSide rf{&s.right, box.factor(s.Jc).center, &s.Jc};

    rep.left_irregular = irregular_pair(lf, distinct(right.values), E, L, ell, spec.m_star);
    rep.right_irregular = irregular_pair(rf, distinct(left.values), E, L, ell, spec.m_star);
    rep.lregular = !rep.left_irregular.found;
    rep.rregular = !rep.right_irregular.found;

    rep.left_resonant = resonant_product(lf, s.full, right.values, E, L, ell, spec.beta, false);
    rep.right_resonant = resonant_product(rf, s.full, left.values, E, L, ell, spec.beta, true);
    rep.lnr = !rep.left_resonant.found;
    rep.rnr = !rep.right_resonant.found;
    rep.nonresonant = model::spectral_distance(full.values, E) >= resonance_threshold(L, spec.beta);

    rep.mass = preregular_mass(spec, L, ell);
    if (rep.preregular() && rep.hnr()) {
        rep.has_conclusion = true;
        rep.conclusion = classify(snapshot(s.full, full, E, L), QualitySpec::regular(rep.mass));
    }
    return rep;
}

}  // namespace mpa::resolvent
