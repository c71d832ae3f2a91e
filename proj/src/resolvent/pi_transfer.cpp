#include "mpa/resolvent/pi_transfer.hpp"

#include <algorithm>
#include <cmath>

#include "mpa/geometry/separation.hpp"

namespace mpa::resolvent {

double transfer_target(const TransferSpec& spec, int n, int d, double side) {
    switch (spec.mode) {
        case TransferMode::Suitable: return spec.parameter / 2.0;
        case TransferMode::Regular: return spec.parameter - 100.0 * n * d * std::log(side) / side;
        case TransferMode::Ses: return spec.zeta_prime;
    }
    return 0.0;
}

QualitySpec factor_quality(const TransferSpec& spec) {
    switch (spec.mode) {
        case TransferMode::Suitable: return QualitySpec::suitable(spec.parameter);
        case TransferMode::Regular: return QualitySpec::regular(spec.parameter);
        case TransferMode::Ses: return QualitySpec::ses(spec.parameter);
    }
    return {};
}

QualitySpec target_quality(const TransferSpec& spec, int n, int d, double side) {
    QualitySpec q = factor_quality(spec);
    q.parameter = transfer_target(spec, n, d, side);
    return q;
}

SplitBox split_box(const geometry::ParticleRectangle& box, const model::DisorderSample& sample,
                   const model::ModelParams& params) {
    const auto inter = geometry::classify_interactivity(box, params.interaction.r0());
    if (!inter.partially_interactive) throw ContractError("pi_transfer: box is fully interactive");
    SplitBox s;
    s.J = inter.J;
    s.Jc = inter.J_complement;
    s.full = model::assemble(box, sample, params);
    s.left = model::assemble(box.factor(s.J), sample, model::factor_params(params, static_cast<int>(s.J.size()), true));
    s.right =
        model::assemble(box.factor(s.Jc), sample, model::factor_params(params, static_cast<int>(s.Jc.size()), false));

    const int d = params.d;
    const auto project = [&](const Coord* x, const std::vector<int>& parts, std::vector<Coord>& out) {
        out.clear();
        for (int p : parts) out.insert(out.end(), x + p * d, x + (p + 1) * d);
    };
    s.left_index.resize(s.full.dim());
    s.right_index.resize(s.full.dim());
    std::vector<Coord> buf;
    for (std::size_t i = 0; i < s.full.dim(); ++i) {
        project(s.full.point(i), s.J, buf);
        s.left_index[i] = s.left.lattice.index_of(buf.data());
        project(s.full.point(i), s.Jc, buf);
        s.right_index[i] = s.right.lattice.index_of(buf.data());
    }
    return s;
}

double kronecker_mismatch(const Eigen::VectorXd& full, const Eigen::VectorXd& left, const Eigen::VectorXd& right) {
    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(left.size() * right.size()));
    for (Eigen::Index i = 0; i < left.size(); ++i)
        for (Eigen::Index j = 0; j < right.size(); ++j) sums.push_back(left(i) + right(j));
    if (static_cast<Eigen::Index>(sums.size()) != full.size()) return std::numeric_limits<double>::infinity();
    std::sort(sums.begin(), sums.end());
    std::vector<double> f(full.data(), full.data() + full.size());
    std::sort(f.begin(), f.end());
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k] - sums[k]));
    return m;
}

namespace {

// Distinct eigenvalues (clusters within 1e-9), each as the cluster mean.
std::vector<double> distinct_values(const Eigen::VectorXd& values) {
    std::vector<double> out;
    for (const auto& c : model::eigenvalue_clusters(values, kKroneckerTolerance)) {
        double s = 0.0;
        for (auto k : c) s += values(static_cast<Eigen::Index>(k));
        out.push_back(s / static_cast<double>(c.size()));
    }
    return out;
}

// sum over shifts of |G_factor(E - shift)| as a matrix on the factor basis.
Eigen::MatrixXd shifted_green_sum(const Spectrum& factor, const std::vector<double>& shifts, double E) {
    const auto D = factor.values.size();
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(D, D);
    for (double shift : shifts) {
        const double z = E - shift;
        const Eigen::VectorXd w = (factor.values.array() - z).inverse().matrix();
        if (!w.allFinite()) return Eigen::MatrixXd::Constant(D, D, std::numeric_limits<double>::infinity());
        S += (factor.vectors * w.asDiagonal() * factor.vectors.transpose()).cwiseAbs();
    }
    return S;
}

// Factor qualifies at E - shift for every shift.
bool factor_hypothesis(const FiniteVolumeOperator& op, const Spectrum& spec, const std::vector<double>& shifts,
                       double E, double side, const QualitySpec& q) {
    for (double shift : shifts)
        if (!classify(snapshot(op, spec, E - shift, side), q).verdict) return false;
    return true;
}

}  // namespace

PiTransferReport pi_transfer_check(const geometry::ParticleRectangle& box, const model::DisorderSample& sample,
                                   const model::ModelParams& params, double E, const TransferSpec& spec) {
    const SplitBox s = split_box(box, sample, params);
    const Spectrum full = model::compute_spectrum(s.full, true);
    require_off_spectrum(full.values, E, "pi_transfer");
    const Spectrum left = model::compute_spectrum(s.left, true);
    const Spectrum right = model::compute_spectrum(s.right, true);

    PiTransferReport rep;
    rep.J = s.J;
    rep.Jc = s.Jc;
    rep.E = E;
    rep.side = box.min_side();
    rep.kronecker_mismatch = kronecker_mismatch(full.values, left.values, right.values);

    const auto lambdas = distinct_values(left.values);
    const auto mus = distinct_values(right.values);
    const Eigen::MatrixXd G = green_matrix(full, E);
    const Eigen::MatrixXd bound_gj = shifted_green_sum(right, lambdas, E);   // on J^c indices
    const Eigen::MatrixXd bound_gjc = shifted_green_sum(left, mus, E);       // on J indices
    rep.gj_excess = -std::numeric_limits<double>::infinity();
    rep.gjc_excess = -std::numeric_limits<double>::infinity();
    const auto D = static_cast<Eigen::Index>(s.full.dim());
    for (Eigen::Index a = 0; a < D; ++a)
        for (Eigen::Index b = 0; b < D; ++b) {
            const double g = std::abs(G(a, b));
            const auto ra = static_cast<Eigen::Index>(s.right_index[a]);
            const auto rb = static_cast<Eigen::Index>(s.right_index[b]);
            const auto la = static_cast<Eigen::Index>(s.left_index[a]);
            const auto lb = static_cast<Eigen::Index>(s.left_index[b]);
            rep.gj_excess = std::max(rep.gj_excess, g - bound_gj(ra, rb));
            rep.gjc_excess = std::max(rep.gjc_excess, g - bound_gjc(la, lb));
        }
    rep.pairs_checked = static_cast<std::size_t>(D * D);

    const QualitySpec fq = factor_quality(spec);
    rep.hypothesis_left = factor_hypothesis(s.left, left, mus, E, rep.side, fq);
    rep.hypothesis_right = factor_hypothesis(s.right, right, lambdas, E, rep.side, fq);

    rep.target = transfer_target(spec, params.n, params.d, rep.side);
    rep.conclusion = classify(snapshot(s.full, full, E, rep.side), target_quality(spec, params.n, params.d, rep.side));
    return rep;
}

}  // namespace mpa::resolvent
