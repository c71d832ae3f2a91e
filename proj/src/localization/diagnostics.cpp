#include "mpa/localization/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "mpa/errors.hpp"

namespace mpa::localization {

namespace {

const Spectrum& require_vectors(const Spectrum& s) {
    if (!s.has_vectors) throw ContractError("localization: eigenvectors are required");
    return s;
}

// <x - a>^{-2 nu} at every site.
Eigen::VectorXd inverse_weight_squared(const FiniteVolumeOperator& op, std::size_t center) {
    const double nu = sudec_nu(op);
    Eigen::VectorXd w(static_cast<Eigen::Index>(op.dim()));
    for (std::size_t x = 0; x < op.dim(); ++x) {
        const double r = op.site_distance(x, center);
        w(static_cast<Eigen::Index>(x)) = std::pow(1.0 + r * r, -nu);
    }
    return w;
}

Eigen::MatrixXd cluster_basis(const Spectrum& spectrum, const std::vector<std::size_t>& cluster) {
    require_vectors(spectrum);
    if (cluster.empty()) throw ContractError("sudec: empty cluster");
    Eigen::MatrixXd V(spectrum.vectors.rows(), static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t k = 0; k < cluster.size(); ++k) V.col(static_cast<Eigen::Index>(k)) = spectrum.vectors.col(static_cast<Eigen::Index>(cluster[k]));
    return V;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
}

}  // namespace

double site_hausdorff(const FiniteVolumeOperator& op, std::size_t i, std::size_t j) {
    const int n = op.lattice.n(), d = op.lattice.d();
    const Coord* a = op.point(i);
    const Coord* b = op.point(j);
    const auto gap = [d](const Coord* p, const Coord* q) {
        Coord m = 0;
        for (int k = 0; k < d; ++k) m = std::max(m, std::abs(p[k] - q[k]));
        return m;
    };
    const auto directed = [&](const Coord* p, const Coord* q) {
        Coord worst = 0;
        for (int s = 0; s < n; ++s) {
            Coord best = gap(p + s * d, q);
            for (int t = 1; t < n; ++t) best = std::min(best, gap(p + s * d, q + t * d));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return static_cast<double>(std::max(directed(a, b), directed(b, a)));
}

DecayProfile decay_profile(const FiniteVolumeOperator& op, const Spectrum& spectrum, std::size_t index) {
    require_vectors(spectrum);
    const auto psi = spectrum.vectors.col(static_cast<Eigen::Index>(index));
    DecayProfile out;
    out.index = index;
    out.eigenvalue = spectrum.values(static_cast<Eigen::Index>(index));
    double best = -1.0;
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        if (std::abs(psi(x)) > best) {
            best = std::abs(psi(x));
            out.center = static_cast<std::size_t>(x);
        }
    }
    out.norm = psi.squaredNorm();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::map<double, int> distinct;
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
        const double a = std::abs(psi(x));
        if (a <= kProfileFloor) continue;
        const DecayPoint pt{static_cast<std::size_t>(x), site_hausdorff(op, static_cast<std::size_t>(x), out.center),
                            std::log(a)};
        out.points.push_back(pt);
        if (pt.distance < 2.0) continue;
        ++out.fitted;
        ++distinct[pt.distance];
        sx += pt.distance;
        sy += pt.log_abs;
        sxx += pt.distance * pt.distance;
        sxy += pt.distance * pt.log_abs;
    }
    if (out.fitted == 0) return out;
    const double k = static_cast<double>(out.fitted);
    const double mx = sx / k, my = sy / k;
    if (distinct.size() < 2) {
        out.intercept = my;
        return out;
    }
    const double b = (sxy - k * mx * my) / (sxx - k * mx * mx);
    out.slope = -b;
    out.intercept = my - b * mx;
    return out;
}

std::vector<DecayProfile> decay_profiles(const FiniteVolumeOperator& op, const Spectrum& spectrum) {
    std::vector<DecayProfile> out;
    for (Eigen::Index n = 0; n < spectrum.values.size(); ++n) out.push_back(decay_profile(op, spectrum, static_cast<std::size_t>(n)));
    return out;
}

std::vector<DecayProfile> decay_profiles(const FiniteVolumeOperator& op) {
    return decay_profiles(op, model::compute_spectrum(op, true));
}

double parseval_defect(const Spectrum& spectrum) {
    require_vectors(spectrum);
    return (spectrum.vectors.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff();
}

std::vector<std::size_t> eigen_indices_in(const Spectrum& spectrum, double lo, double hi) {
    std::vector<std::size_t> out;
    for (Eigen::Index n = 0; n < spectrum.values.size(); ++n)
        if (lo <= spectrum.values(n) && spectrum.values(n) <= hi) out.push_back(static_cast<std::size_t>(n));
    return out;
}

std::vector<double> default_time_samples() {
    std::vector<double> t(1001);
    for (int k = 0; k <= 1000; ++k) t[k] = k / 10.0;
    return t;
}

KernelEstimate kernel_estimate(const FiniteVolumeOperator& op, const Spectrum& spectrum, double lo, double hi,
                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                               const std::vector<double>& times) {
    require_vectors(spectrum);
    KernelEstimate out;
    out.lo = lo;
    out.hi = hi;
    out.times = times;
    const auto idx = eigen_indices_in(spectrum, lo, hi);
    out.eigenvalues = idx.size();
    for (const auto& [x, y] : pairs) {
        if (x >= op.dim() || y >= op.dim()) throw ContractError("kernel: site index out of range");
        KernelEntry e{x, y, site_hausdorff(op, x, y), 0.0, 0.0, 0.0};
        std::vector<double> c(idx.size()), energy(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const auto n = static_cast<Eigen::Index>(idx[k]);
            c[k] = spectrum.vectors(static_cast<Eigen::Index>(x), n) * spectrum.vectors(static_cast<Eigen::Index>(y), n);
            energy[k] = spectrum.values(n);
            e.correlator += std::abs(c[k]);
        }
        for (double t : times) {
            std::complex<double> amp = 0.0;
            for (std::size_t k = 0; k < idx.size(); ++k) amp += c[k] * std::polar(1.0, -t * energy[k]);
            if (std::abs(amp) > e.max_amplitude) {
                e.max_amplitude = std::abs(amp);
                e.argmax_time = t;
            }
        }
        out.max_violation = std::max(out.max_violation, e.max_amplitude - e.correlator);
        out.entries.push_back(e);
    }
    return out;
}

std::vector<KernelBin> kernel_by_distance(const FiniteVolumeOperator& op, const Spectrum& spectrum, double lo,
                                          double hi) {
    require_vectors(spectrum);
    const auto idx = eigen_indices_in(spectrum, lo, hi);
    Eigen::MatrixXd A(spectrum.vectors.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) A.col(static_cast<Eigen::Index>(k)) = spectrum.vectors.col(static_cast<Eigen::Index>(idx[k])).cwiseAbs();
    const Eigen::MatrixXd Q = A * A.transpose();
    std::map<double, std::vector<double>> bins;
    for (std::size_t i = 0; i < op.dim(); ++i)
        for (std::size_t j = i; j < op.dim(); ++j)
            bins[site_hausdorff(op, i, j)].push_back(Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    std::vector<KernelBin> out;
    for (auto& [dist, v] : bins) {
        double s = 0.0;
        for (double q : v) s += q;
        out.push_back({dist, v.size(), median_of(v), s / static_cast<double>(v.size())});
    }
    return out;
}

std::vector<std::vector<std::size_t>> spectral_clusters(const Spectrum& spectrum) {
    return model::eigenvalue_clusters(spectrum.values, kClusterTolerance);
}

double sudec_nu(const FiniteVolumeOperator& op) { return (op.lattice.n() * op.lattice.d() + 1) / 2.0; }

double weighted_norm(const FiniteVolumeOperator& op, std::size_t center, const Eigen::VectorXd& phi) {
    return std::sqrt((inverse_weight_squared(op, center).array() * phi.array().square()).sum());
}

SudecValues sudec_values(const FiniteVolumeOperator& op, const Spectrum& spectrum,
                         const std::vector<std::size_t>& cluster, std::size_t center) {
    if (center >= op.dim()) throw ContractError("sudec: center outside the box");
    const Eigen::MatrixXd V = cluster_basis(spectrum, cluster);
    SudecValues out;
    out.multiplicity = cluster.size();
    out.degenerate = cluster.size() > 1;
    out.center = center;
    out.nu = sudec_nu(op);
    double mean = 0.0;
    for (auto k : cluster) mean += spectrum.values(static_cast<Eigen::Index>(k));
    out.eigenvalue = mean / static_cast<double>(cluster.size());

    const Eigen::VectorXd u = V.row(static_cast<Eigen::Index>(center)).transpose();
    const Eigen::MatrixXd B = V.transpose() * inverse_weight_squared(op, center).asDiagonal() * V;
    out.Z = std::sqrt(u.squaredNorm() / B.trace());
    if (cluster.size() == 1) {
        out.W = std::abs(u(0)) / std::sqrt(B(0, 0));
        return out;
    }
    // sup over phi in the eigenspace of |phi(a)|^2 / ||T_a^{-1} phi||^2: top generalized eigenvalue of (u u^T, B).
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(u * u.transpose(), B, Eigen::EigenvaluesOnly);
    if (ges.info() != Eigen::Success) throw NumericFailure("sudec: generalized eigensolve failed");
    out.W = std::sqrt(std::max(0.0, ges.eigenvalues().maxCoeff()));
    return out;
}

std::vector<SudecValues> sudec_values(const FiniteVolumeOperator& op, const Spectrum& spectrum,
                                      const std::vector<std::size_t>& cluster, const std::vector<std::size_t>& centers) {
    std::vector<SudecValues> out;
    out.reserve(centers.size());
    for (auto a : centers) out.push_back(sudec_values(op, spectrum, cluster, a));
    return out;
}

SudecPairCheck sudec_pair_check(const FiniteVolumeOperator& op, const Spectrum& spectrum,
                                const std::vector<std::size_t>& cluster, std::size_t x, std::size_t y,
                                const Eigen::VectorXd& phi_coeffs, const Eigen::VectorXd& psi_coeffs) {
    const Eigen::MatrixXd V = cluster_basis(spectrum, cluster);
    const Eigen::VectorXd phi = V * phi_coeffs;
    const Eigen::VectorXd psi = V * psi_coeffs;
    const double wx = sudec_values(op, spectrum, cluster, x).W;
    const double wy = sudec_values(op, spectrum, cluster, y).W;
    return {std::abs(phi(static_cast<Eigen::Index>(x))) * std::abs(psi(static_cast<Eigen::Index>(y))),
            wx * wy * weighted_norm(op, x, phi) * weighted_norm(op, y, psi)};
}

}  // namespace mpa::localization
