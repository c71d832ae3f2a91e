#pragma once

#include <cstddef>
#include <vector>

#include "mpa/model/hamiltonian.hpp"

namespace mpa::localization {

using model::FiniteVolumeOperator;
using model::Spectrum;
using geometry::Coord;

inline constexpr double kProfileFloor = 1e-30;
inline constexpr double kClusterTolerance = 1e-9;

// Hausdorff distance between the particle sets of two basis sites.
double site_hausdorff(const FiniteVolumeOperator& op, std::size_t i, std::size_t j);

struct DecayPoint {
    std::size_t site = 0;
    double distance = 0.0;  // d_H(site, center)
    double log_abs = 0.0;   // log |psi(site)|
};

// log|psi| ~ intercept - slope * d_H, fitted on points with d_H >= 2; positive slope means decay.
struct DecayProfile {
    std::size_t index = 0;
    double eigenvalue = 0.0;
    std::size_t center = 0;  // argmax |psi|, lowest index on ties
    std::vector<DecayPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t fitted = 0;  // points used by the fit; slope 0 when fewer than two distances
    double norm = 0.0;       // sum |psi|^2
};

DecayProfile decay_profile(const FiniteVolumeOperator& op, const Spectrum& spectrum, std::size_t index);
std::vector<DecayProfile> decay_profiles(const FiniteVolumeOperator& op, const Spectrum& spectrum);
std::vector<DecayProfile> decay_profiles(const FiniteVolumeOperator& op);

// max_x |sum_n psi_n(x)^2 - 1|.
double parseval_defect(const Spectrum& spectrum);

// Indices of the eigenvalues inside the closed interval [lo, hi].
std::vector<std::size_t> eigen_indices_in(const Spectrum& spectrum, double lo, double hi);

std::vector<double> default_time_samples();  // 0, 0.1, ..., 100

struct KernelEntry {
    std::size_t x = 0, y = 0;
    double distance = 0.0;     // d_H(x, y)
    double correlator = 0.0;   // Q_I(x, y) = sum_{E_n in I} |psi_n(x)| |psi_n(y)|
    double max_amplitude = 0.0;  // max over sampled t of |<delta_x, e^{-itH} chi_I(H) delta_y>|
    double argmax_time = 0.0;
};

struct KernelEstimate {
    double lo = 0.0, hi = 0.0;
    std::size_t eigenvalues = 0;
    std::vector<double> times;
    std::vector<KernelEntry> entries;
    double max_violation = 0.0;  // max(amplitude - Q), should stay <= 1e-9
};

KernelEstimate kernel_estimate(const FiniteVolumeOperator& op, const Spectrum& spectrum, double lo, double hi,
                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                               const std::vector<double>& times);

// Q_I over every site pair, grouped by integer d_H.
struct KernelBin {
    double distance = 0.0;
    std::size_t pairs = 0;
    double median = 0.0;
    double mean = 0.0;
};

std::vector<KernelBin> kernel_by_distance(const FiniteVolumeOperator& op, const Spectrum& spectrum, double lo,
                                          double hi);

// W and Z of one eigenvalue cluster at site a, weight <x - a>^nu with nu = (nd + 1)/2.
struct SudecValues {
    double eigenvalue = 0.0;     // cluster mean
    std::size_t multiplicity = 1;
    bool degenerate = false;     // multiplicity > 1
    std::size_t center = 0;
    double nu = 0.0;
    double Z = 0.0;
    double W = 0.0;
};

// Eigenvalue clusters at tolerance 1e-9, as index lists.
std::vector<std::vector<std::size_t>> spectral_clusters(const Spectrum& spectrum);

SudecValues sudec_values(const FiniteVolumeOperator& op, const Spectrum& spectrum,
                         const std::vector<std::size_t>& cluster, std::size_t center);
std::vector<SudecValues> sudec_values(const FiniteVolumeOperator& op, const Spectrum& spectrum,
                                      const std::vector<std::size_t>& cluster, const std::vector<std::size_t>& centers);

double sudec_nu(const FiniteVolumeOperator& op);
// ||T_a^{-1} phi|| for a vector on the box.
double weighted_norm(const FiniteVolumeOperator& op, std::size_t center, const Eigen::VectorXd& phi);

// |phi(x)| |psi(y)| <= W_x W_y ||T_x^{-1} phi|| ||T_y^{-1} psi|| for phi, psi in the cluster's eigenspace.
struct SudecPairCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds() const { return lhs <= rhs * (1.0 + 1e-10) + 1e-14; }
};

SudecPairCheck sudec_pair_check(const FiniteVolumeOperator& op, const Spectrum& spectrum,
                                const std::vector<std::size_t>& cluster, std::size_t x, std::size_t y,
                                const Eigen::VectorXd& phi_coeffs, const Eigen::VectorXd& psi_coeffs);

}  // namespace mpa::localization
