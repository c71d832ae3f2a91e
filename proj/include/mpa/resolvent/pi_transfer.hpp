#pragma once

#include <vector>

#include "mpa/model/disorder.hpp"
#include "mpa/resolvent/quality.hpp"

namespace mpa::resolvent {

enum class TransferMode { Suitable, Regular, Ses };

// parameter is theta, m or zeta for the factor hypotheses; zeta_prime is the SES target.
struct TransferSpec {
    TransferMode mode = TransferMode::Suitable;
    double parameter = 0.0;
    double zeta_prime = 0.0;
};

// Quality the full box should inherit: theta/2, m - 100 n d log(l)/l, or zeta'.
double transfer_target(const TransferSpec& spec, int n, int d, double side);
QualitySpec factor_quality(const TransferSpec& spec);
QualitySpec target_quality(const TransferSpec& spec, int n, int d, double side);

// Split of a partially interactive box into its two factor operators.
struct SplitBox {
    std::vector<int> J, Jc;
    FiniteVolumeOperator full, left, right;   // left over J, right over J^c
    std::vector<std::size_t> left_index, right_index;  // full basis index -> factor index
};

// Throws ContractError when the box is fully interactive.
SplitBox split_box(const geometry::ParticleRectangle& box, const model::DisorderSample& sample,
                   const model::ModelParams& params);

// max |sorted sigma(H) - sorted (sigma_J + sigma_J^c)|.
double kronecker_mismatch(const Eigen::VectorXd& full, const Eigen::VectorXd& left, const Eigen::VectorXd& right);

struct PiTransferReport {
    std::vector<int> J, Jc;
    double E = 0.0;
    double side = 0.0;
    double kronecker_mismatch = 0.0;
    // max over pairs of |G(a,b)| minus the factor sum bound; the bound holds when <= 1e-8.
    double gj_excess = 0.0;
    double gjc_excess = 0.0;
    std::size_t pairs_checked = 0;
    // Factor J qualifies at E - mu for every mu in sigma_J^c (and symmetrically).
    bool hypothesis_left = false;
    bool hypothesis_right = false;
    double target = 0.0;
    BoxQualityReport conclusion;

    bool hypotheses() const { return hypothesis_left && hypothesis_right; }
    bool counterexample() const { return hypotheses() && !conclusion.verdict; }
};

inline constexpr double kGreenBoundSlack = 1e-8;
inline constexpr double kKroneckerTolerance = 1e-9;

// Throws ResonantEnergy when E is within 1e-12 of the full spectrum.
PiTransferReport pi_transfer_check(const geometry::ParticleRectangle& box, const model::DisorderSample& sample,
                                   const model::ModelParams& params, double E, const TransferSpec& spec);

}  // namespace mpa::resolvent
