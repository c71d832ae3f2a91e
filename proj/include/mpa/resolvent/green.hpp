#pragma once

#include <utility>
#include <vector>

#include "mpa/model/hamiltonian.hpp"

namespace mpa::resolvent {

using model::FiniteVolumeOperator;
using model::Spectrum;
using geometry::ConfigPoint;
using geometry::Coord;

// Energies closer than this to the spectrum are refused.
inline constexpr double kResonanceGuard = 1e-12;

// G(E; a, b) = <delta_a, (H - E)^{-1} delta_b> for the listed basis index pairs, one LU
// column solve per distinct b. Throws ResonantEnergy when dist(sigma, E) <= 1e-12.
std::vector<double> green_entries(const FiniteVolumeOperator& op, double E,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// Full resolvent V diag(1/(lambda - E)) V^T from an eigendecomposition.
Eigen::MatrixXd green_matrix(const Spectrum& spectrum, double E);

// Full resolvent by explicit inversion; the reference for the two routes above.
Eigen::MatrixXd green_inverse(const Eigen::MatrixXd& H, double E);

// Throws ResonantEnergy when the energy is within the guard of the spectrum.
void require_off_spectrum(const Eigen::VectorXd& values, double E, const char* where);

}  // namespace mpa::resolvent
