#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mpa/geometry/bad_region.hpp"
#include "mpa/model/disorder.hpp"
#include "mpa/resolvent/pi_transfer.hpp"

namespace mpa::resolvent {

enum class MsaMode { Suitable, Regular, Ses };
std::string to_string(MsaMode mode);

struct MsaSpec {
    MsaMode mode = MsaMode::Suitable;
    double theta = 0.0;  // suitable: cover boxes and conclusion
    double s = 0.0;      // suitable: nonresonance L^{-s}
    double m_ell = 0.0;  // regular: cover boxes at m_ell
    double kappa = 0.0;  // regular: conclusion at m_L = m_ell - 1/(2 ell^kappa)
    double zeta0 = 0.0;  // SES: cover boxes and conclusion
    double beta = 0.0;   // regular and SES: nonresonance 1/2 e^{-L^beta}
    int J = 1;
};

struct MsaCheckReport {
    MsaMode mode = MsaMode::Suitable;
    double L = 0.0, ell = 0.0, alpha = 0.0;
    int J = 1;
    bool parent_nonresonant = false;
    bool subboxes_nonresonant = false;
    std::size_t subboxes_checked = 0;     // K_j ell boxes inside the parent
    std::size_t cover_boxes = 0;
    std::size_t bad_cover_boxes = 0;
    // Largest pairwise ell-distant family of bad cover boxes, searched up to J + 1.
    std::size_t distant_bad = 0;
    bool count_ok = false;
    double target = 0.0;     // theta, m_L or zeta0
    BoxQualityReport conclusion;
    double achieved = 0.0;   // largest theta, mass or zeta the parent supports

    bool hypotheses() const { return parent_nonresonant && subboxes_nonresonant && count_ok; }
};

// Size of the largest subset of `nodes` that is pairwise adjacent, stopping once `cap` is reached.
std::size_t max_pairwise_family(std::size_t count, const std::function<bool(std::size_t, std::size_t)>& adjacent,
                                std::size_t cap);

// K_j ell boxes Lambda_{K_j ell}(u), u in Xi, j <= count, that lie inside the parent.
struct SubBox {
    geometry::LatticeIndex center;
    int j = 1;
    double side = 0.0;
    geometry::LatticeBox box;
};
std::vector<SubBox> multiscale_subboxes(const geometry::SuitableCover& cover, int count);

// Evaluates the three hypotheses and, separately, the conclusion on the parent Green function.
MsaCheckReport msa_deterministic_check(const geometry::RealCenter& x, double L, double ell,
                                       const model::DisorderSample& sample, const model::ModelParams& params,
                                       double E, const MsaSpec& spec);

// eta = 1/2 e^{-mL - 2L^beta}.
double energy_shift_eta(double m, double L, double beta);

struct EnergyShiftReport {
    double E0 = 0.0, m = 0.0, beta = 0.0, side = 0.0, eta = 0.0;
    bool pre_regular = false;
    bool pre_norm = false;     // dist(sigma, E0) >= e^{-L^beta}
    double target_mass = 0.0;  // m - 100 log 2 / L
    std::vector<double> grid;
    std::vector<bool> good;

    bool preconditions() const { return pre_regular && pre_norm; }
    bool all_good() const;
};

// Grid of `points` energies evenly spaced inside (E0 - eta, E0 + eta).
EnergyShiftReport energy_shift_check(const FiniteVolumeOperator& op, const Spectrum& spectrum, double side, double E0,
                                     double m, double beta, int points = 21);

struct PreregularSpec {
    double m_star = 0.0;
    double beta = 0.0;
    double gamma = 0.0;  // L = ell^gamma; <= 0 means log L / log ell
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

// m(L) = m* - c1 ell^{1-gamma} - c2 ell^{1-beta} - c3 log L / L.
double preregular_mass(const PreregularSpec& spec, double L, double ell);

// A product box Lambda_{K_j ell}(a) x Lambda_L(u_other) (or the mirror) resonant at E.
struct ResonanceWitness {
    bool found = false;
    bool right = false;          // small box on the J^c side
    geometry::LatticeIndex center;
    int j = 0;
    double small_side = 0.0;
    double dist = 0.0;
    double threshold = 0.0;
    geometry::LatticeBox box;    // the full product box
};

// Two partially separated cover boxes of one factor, both nonregular at E - shift.
struct RegularityWitness {
    bool found = false;
    double shift = 0.0;
    geometry::LatticeIndex first, second;
};

struct PreregularReport {
    std::vector<int> J, Jc;
    double E = 0.0, L = 0.0, ell = 0.0;
    bool lregular = false, rregular = false;
    bool lnr = false, rnr = false, nonresonant = false;
    RegularityWitness left_irregular, right_irregular;
    ResonanceWitness left_resonant, right_resonant;
    double mass = 0.0;  // m(L)
    bool has_conclusion = false;
    BoxQualityReport conclusion;

    bool preregular() const { return lregular && rregular; }
    bool hnr() const { return nonresonant && lnr && rnr; }
};

PreregularReport preregular_and_hnr_check(const geometry::ParticleRectangle& box, const model::DisorderSample& sample,
                                          const model::ModelParams& params, double E, double ell,
                                          const PreregularSpec& spec);

}  // namespace mpa::resolvent
