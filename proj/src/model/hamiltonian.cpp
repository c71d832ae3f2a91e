#include "mpa/model/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <ostream>

#include "mpa/format.hpp"

namespace mpa::model {

namespace {

template <class Omega>
FiniteVolumeOperator assemble_with(const geometry::ParticleRectangle& rect, const Omega& omega,
                                   const ModelParams& params, std::size_t cap) {
    params.validate();
    if (rect.n() != params.n || rect.d() != params.d) throw ContractError("assemble: rectangle shape differs from model");
    FiniteVolumeOperator op;
    op.rect = rect;
    op.lattice = geometry::LatticeBox::of(rect);
    const std::size_t D = op.lattice.size();
    if (D > cap) throw CapExceeded("assemble: dimension exceeds the dense cap");
    const int n = params.n;
    const int d = params.d;
    const int axes = n * d;
    op.coords.resize(D * axes);
    for (std::size_t i = 0; i < D; ++i) op.lattice.point_at(i, op.coords.data() + i * axes);

    // Per-axis strides of the lexicographic index.
    std::vector<std::size_t> stride(axes, 1);
    for (int a = axes - 2; a >= 0; --a)
        stride[a] = stride[a + 1] * static_cast<std::size_t>(op.lattice.range(a + 1).extent());

    op.H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
    const double base = 2.0 * n * d + params.diagonal_shift;
    std::vector<Coord> diff(d);
    for (std::size_t i = 0; i < D; ++i) {
        const Coord* x = op.point(i);
        double v = base;
        if (params.lambda != 0.0)
            for (int p = 0; p < n; ++p) v += params.lambda * omega(std::span<const Coord>(x + p * d, d));
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                for (int k = 0; k < d; ++k) diff[k] = x[p * d + k] - x[q * d + k];
                v += params.interaction(diff);
            }
        const auto ii = static_cast<Eigen::Index>(i);
        op.H(ii, ii) = v;
        for (int a = 0; a < axes; ++a) {
            if (x[a] < op.lattice.range(a).hi) {
                const auto j = static_cast<Eigen::Index>(i + stride[a]);
                op.H(ii, j) = -1.0;
                op.H(j, ii) = -1.0;
            }
        }
    }
    return op;
}

}  // namespace

double FiniteVolumeOperator::site_distance(std::size_t i, std::size_t j) const {
    const Coord* a = point(i);
    const Coord* b = point(j);
    Coord m = 0;
    for (int k = 0; k < axes(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return static_cast<double>(m);
}

FiniteVolumeOperator assemble(const geometry::ParticleRectangle& rect, const DisorderSample& sample,
                              const ModelParams& params, std::size_t cap) {
    const auto lat = geometry::LatticeBox::of(rect);
    if (params.lambda != 0.0 && !lat.projection_hull().subset_of(sample.region))
        throw ContractError("assemble: disorder sample does not cover the rectangle");
    return assemble_with(rect, [&](std::span<const Coord> s) { return sample.at(s); }, params, cap);
}

FiniteVolumeOperator assemble(const geometry::ParticleRectangle& rect, const DisorderField& field,
                              const ModelParams& params, std::size_t cap) {
    return assemble_with(rect, field, params, cap);
}

std::vector<std::size_t> embedding(const FiniteVolumeOperator& op, const geometry::LatticeBox& sub) {
    if (!sub.subset_of(op.lattice)) throw ContractError("restrict: sub-rectangle is not inside the operator box");
    std::vector<std::size_t> map(sub.size());
    std::vector<Coord> p(static_cast<std::size_t>(op.axes()));
    for (std::size_t i = 0; i < map.size(); ++i) {
        sub.point_at(i, p.data());
        map[i] = op.lattice.index_of(p.data());
    }
    return map;
}

namespace {

FiniteVolumeOperator restrict_lattice(const FiniteVolumeOperator& op, FiniteVolumeOperator out) {
    const auto map = embedding(op, out.lattice);
    const auto D = static_cast<Eigen::Index>(map.size());
    out.H.resize(D, D);
    for (Eigen::Index i = 0; i < D; ++i)
        for (Eigen::Index j = 0; j < D; ++j)
            out.H(i, j) = op.H(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j]));
    const int axes = op.axes();
    out.coords.resize(map.size() * axes);
    for (std::size_t i = 0; i < map.size(); ++i)
        std::copy(op.point(map[i]), op.point(map[i]) + axes, out.coords.begin() + static_cast<std::ptrdiff_t>(i * axes));
    return out;
}

}  // namespace

FiniteVolumeOperator restrict_to(const FiniteVolumeOperator& op, const geometry::ParticleRectangle& sub) {
    FiniteVolumeOperator out;
    out.rect = sub;
    out.lattice = geometry::LatticeBox::of(sub);
    return restrict_lattice(op, std::move(out));
}

FiniteVolumeOperator restrict_to(const FiniteVolumeOperator& op, const geometry::LatticeBox& sub) {
    if (sub.empty()) throw ContractError("restrict: empty sub-box");
    const int n = sub.n();
    const int d = sub.d();
    geometry::RealCenter c(n, d);
    std::vector<double> sides(static_cast<std::size_t>(n), 1.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) {
            const auto& r = sub.range(i * d + k);
            c(i, k) = 0.5 * static_cast<double>(r.lo + r.hi);
            sides[i] = std::max(sides[i], static_cast<double>(r.hi - r.lo));
        }
    FiniteVolumeOperator out;
    out.rect = geometry::ParticleRectangle(c, sides);
    out.lattice = sub;
    return restrict_lattice(op, std::move(out));
}

Spectrum compute_spectrum(const Eigen::MatrixXd& H, bool want_vectors, std::size_t cap) {
    if (static_cast<std::size_t>(H.rows()) > cap) throw CapExceeded("spectrum: dimension exceeds the dense cap");
    if (!H.allFinite()) throw NumericFailure("spectrum: matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, want_vectors ? Eigen::ComputeEigenvectors
                                                                          : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericFailure("spectrum: eigensolver did not converge");
    Spectrum s;
    s.values = solver.eigenvalues();
    if (want_vectors) {
        s.vectors = solver.eigenvectors();
        s.has_vectors = true;
        const double scale = std::max(1.0, s.values.cwiseAbs().maxCoeff());
        s.residual = ((H * s.vectors) - s.vectors * s.values.asDiagonal()).cwiseAbs().maxCoeff();
        if (!(s.residual <= 1e-9 * scale)) throw NumericFailure("spectrum: eigenpair residual above 1e-9 ||H||");
    }
    return s;
}

Spectrum compute_spectrum(const FiniteVolumeOperator& op, bool want_vectors, std::size_t cap) {
    return compute_spectrum(op.H, want_vectors, cap);
}

std::vector<std::vector<std::size_t>> eigenvalue_clusters(const Eigen::VectorXd& values, double tol) {
    std::vector<std::vector<std::size_t>> out;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (out.empty() || values(i) - values(static_cast<Eigen::Index>(out.back().back())) > tol) out.emplace_back();
        out.back().push_back(static_cast<std::size_t>(i));
    }
    return out;
}

double spectral_distance(const Eigen::VectorXd& values, double E) {
    if (values.size() == 0) return std::numeric_limits<double>::infinity();
    return (values.array() - E).abs().minCoeff();
}

void write_coo(std::ostream& out, const FiniteVolumeOperator& op) {
    for (Eigen::Index i = 0; i < op.H.rows(); ++i)
        for (Eigen::Index j = i; j < op.H.cols(); ++j)
            if (op.H(i, j) != 0.0) out << i << ' ' << j << ' ' << format_double(op.H(i, j)) << '\n';
}

}  // namespace mpa::model
