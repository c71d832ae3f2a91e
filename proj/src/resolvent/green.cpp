#include "mpa/resolvent/green.hpp"

#include <Eigen/LU>
#include <map>
#include <string>

namespace mpa::resolvent {

void require_off_spectrum(const Eigen::VectorXd& values, double E, const char* where) {
    const double dist = model::spectral_distance(values, E);
    if (!(dist > kResonanceGuard))
        throw ResonantEnergy(std::string(where) + ": energy within 1e-12 of the spectrum", dist);
}

std::vector<double> green_entries(const FiniteVolumeOperator& op, double E,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    require_off_spectrum(model::compute_spectrum(op, false).values, E, "green_entries");
    const auto D = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXd A = op.H;
    A.diagonal().array() -= E;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();

    std::map<std::size_t, Eigen::VectorXd> columns;
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a >= op.dim() || b >= op.dim()) throw ContractError("green_entries: index outside the box");
        auto it = columns.find(b);
        if (it == columns.end()) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(D);
            e(static_cast<Eigen::Index>(b)) = 1.0;
            Eigen::VectorXd g = lu.solve(e);
            const double res = (A * g - e).cwiseAbs().maxCoeff();
            if (!g.allFinite() || !(res <= 1e-9 * std::max(1.0, norm * g.cwiseAbs().maxCoeff())))
                throw NumericFailure("green_entries: column solve residual above tolerance");
            it = columns.emplace(b, std::move(g)).first;
        }
        out.push_back(it->second(static_cast<Eigen::Index>(a)));
    }
    return out;
}

Eigen::MatrixXd green_matrix(const Spectrum& spectrum, double E) {
    if (!spectrum.has_vectors) throw ContractError("green_matrix: eigenvectors required");
    require_off_spectrum(spectrum.values, E, "green_matrix");
    const Eigen::VectorXd w = (spectrum.values.array() - E).inverse().matrix();
    return spectrum.vectors * w.asDiagonal() * spectrum.vectors.transpose();
}

Eigen::MatrixXd green_inverse(const Eigen::MatrixXd& H, double E) {
    Eigen::MatrixXd A = H;
    A.diagonal().array() -= E;
    return A.partialPivLu().inverse();
}

}  // namespace mpa::resolvent
