#include "mpa/resolvent/quality.hpp"

#include <cmath>

namespace mpa::resolvent {

std::string to_string(QualityKind kind) {
    switch (kind) {
        case QualityKind::Suitable: return "suitable";
        case QualityKind::Ses: return "ses";
        case QualityKind::Regular: return "regular";
        case QualityKind::SuitablyNonresonant: return "suitably_nonresonant";
        case QualityKind::Nonresonant: return "nonresonant";
        case QualityKind::Good: return "good";
    }
    return "unknown";
}

QualityKind quality_kind_from_string(const std::string& name) {
    for (auto k : {QualityKind::Suitable, QualityKind::Ses, QualityKind::Regular, QualityKind::SuitablyNonresonant,
                   QualityKind::Nonresonant, QualityKind::Good})
        if (to_string(k) == name) return k;
    throw ContractError("unknown quality kind: " + name);
}

double GreenSnapshot::pair_distance(std::size_t i, std::size_t j) const {
    const Coord* x = coords.data() + i * static_cast<std::size_t>(axes);
    const Coord* y = coords.data() + j * static_cast<std::size_t>(axes);
    Coord m = 0;
    for (int k = 0; k < axes; ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return static_cast<double>(m);
}

GreenSnapshot snapshot(const FiniteVolumeOperator& op, const Spectrum& spectrum, double E, double side) {
    GreenSnapshot s;
    s.E = E;
    s.side = side;
    s.n = op.lattice.n();
    s.d = op.lattice.d();
    s.axes = op.axes();
    s.coords = op.coords;
    s.dist = model::spectral_distance(spectrum.values, E);
    s.guarded = !(s.dist > kResonanceGuard);
    if (!s.guarded) s.G = green_matrix(spectrum, E);
    return s;
}

GreenSnapshot snapshot(const FiniteVolumeOperator& op, double E) {
    return snapshot(op, model::compute_spectrum(op, true), E, op.rect.min_side());
}

double suitable_resonance_threshold(double side, double s) { return std::pow(side, -s); }
double resonance_threshold(double side, double beta) { return 0.5 * std::exp(-std::pow(side, beta)); }

namespace {

double green_score(QualityKind kind, double parameter, double side, double abs_g, double r) {
    const double lg = std::log(abs_g);
    switch (kind) {
        case QualityKind::Suitable: return lg + parameter * std::log(side);
        case QualityKind::Ses: return lg + std::pow(side, parameter);
        default: return lg + parameter * r;
    }
}

bool resonance_verdict(QualityKind kind, double parameter, double side, double dist) {
    if (kind == QualityKind::SuitablyNonresonant) return dist >= suitable_resonance_threshold(side, parameter);
    return dist >= resonance_threshold(side, parameter);
}

}  // namespace

BoxQualityReport classify(const GreenSnapshot& snap, const QualitySpec& spec) {
    BoxQualityReport rep;
    rep.E = snap.E;
    rep.side = snap.side;
    rep.spec = spec;
    rep.dist = snap.dist;
    rep.guarded = snap.guarded;

    if (spec.kind == QualityKind::SuitablyNonresonant || spec.kind == QualityKind::Nonresonant) {
        rep.verdict = resonance_verdict(spec.kind, spec.parameter, snap.side, snap.dist);
        return rep;
    }
    if (snap.guarded) {
        rep.verdict = false;
        return rep;
    }
    const QualityKind gk = spec.kind == QualityKind::Good ? QualityKind::Regular : spec.kind;
    const double thr = snap.pair_threshold();
    const std::size_t D = snap.dim();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            const double r = snap.pair_distance(i, j);
            if (r < thr) continue;
            const double g = std::abs(snap.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            const double sc = green_score(gk, spec.parameter, snap.side, g, r);
            if (!rep.has_pair || sc > best) {
                best = sc;
                rep.has_pair = true;
                rep.a = i;
                rep.b = j;
                rep.abs_g = g;
                rep.r = r;
            }
        }
    if (rep.has_pair) {
        rep.score = best;
        const auto pt = [&](std::size_t i) {
            ConfigPoint p;
            p.n = snap.n;
            p.d = snap.d;
            p.x.assign(snap.coords.begin() + static_cast<std::ptrdiff_t>(i * snap.axes),
                       snap.coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * snap.axes));
            return p;
        };
        rep.point_a = pt(rep.a);
        rep.point_b = pt(rep.b);
    }
    rep.verdict = verdict_from_report(rep);
    return rep;
}

BoxQualityReport classify(const FiniteVolumeOperator& op, double E, const QualitySpec& spec) {
    return classify(snapshot(op, E), spec);
}

bool verdict_from_report(const BoxQualityReport& rep) {
    const auto& spec = rep.spec;
    if (spec.kind == QualityKind::SuitablyNonresonant || spec.kind == QualityKind::Nonresonant)
        return resonance_verdict(spec.kind, spec.parameter, rep.side, rep.dist);
    if (rep.guarded) return false;
    const QualityKind gk = spec.kind == QualityKind::Good ? QualityKind::Regular : spec.kind;
    const bool green_ok = !rep.has_pair || green_score(gk, spec.parameter, rep.side, rep.abs_g, rep.r) <= 0.0;
    if (spec.kind == QualityKind::Good)
        return green_ok && resonance_verdict(QualityKind::Nonresonant, spec.beta, rep.side, rep.dist);
    return green_ok;
}

bool is_good(const GreenSnapshot& snap, double m, double beta) {
    return classify(snap, QualitySpec::good(m, beta)).verdict;
}

bool is_good(const FiniteVolumeOperator& op, double E, double m, double beta) {
    return is_good(snapshot(op, E), m, beta);
}

double AchievedExponents::theta() const { return -max_log_g / std::log(side); }

double AchievedExponents::zeta() const {
    if (!(max_log_g < 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(-max_log_g) / std::log(side);
}

AchievedExponents achieved_exponents(const GreenSnapshot& snap) {
    AchievedExponents out;
    out.side = snap.side;
    if (snap.guarded) {
        out.max_log_g = std::numeric_limits<double>::infinity();
        out.min_rate = -std::numeric_limits<double>::infinity();
        return out;
    }
    const double thr = snap.pair_threshold();
    const std::size_t D = snap.dim();
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            const double r = snap.pair_distance(i, j);
            if (r < thr) continue;
            const double lg = std::log(std::abs(snap.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
            out.has_pairs = true;
            out.max_log_g = std::max(out.max_log_g, lg);
            out.min_rate = std::min(out.min_rate, -lg / r);
        }
    return out;
}

std::array<Implication, 4> quality_implications(const GreenSnapshot& snap, double m, double theta, double zeta) {
    const double L = snap.side;
    if (!(L > 1.0)) throw ContractError("quality_implications: side must exceed 1");
    const double logL = std::log(L);
    const std::array<std::pair<QualitySpec, QualitySpec>, 4> specs = {{
        {QualitySpec::regular(m), QualitySpec::suitable(m * L / (100.0 * logL))},
        {QualitySpec::suitable(theta), QualitySpec::regular(theta * logL / L)},
        {QualitySpec::regular(std::pow(L, zeta - 1.0)), QualitySpec::ses(zeta - std::log(100.0) / logL)},
        {QualitySpec::ses(zeta), QualitySpec::regular(std::pow(L, zeta - 1.0))},
    }};
    std::array<Implication, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        out[k].premise_spec = specs[k].first;
        out[k].conclusion_spec = specs[k].second;
        out[k].premise = classify(snap, specs[k].first).verdict;
        out[k].conclusion = classify(snap, specs[k].second).verdict;
    }
    return out;
}

}  // namespace mpa::resolvent
