#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpa/geometry/lattice.hpp"
#include "mpa/model/params.hpp"
#include "mpa/resolvent/quality.hpp"
#include "mpa/stochastic/stats.hpp"

namespace mpa::stochastic {

using geometry::ParticleRectangle;
using model::ModelParams;
using resolvent::QualitySpec;

struct McOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: hardware concurrency
};

// One Monte Carlo sample; `values` are named per-estimator diagnostics.
struct SampleRecord {
    std::uint64_t sample_index = 0;
    std::uint64_t seed = 0;
    bool event = false;
    std::vector<std::pair<std::string, double>> values;
};

// A single energy, or a closed interval explored on a finite grid.
struct EnergySpec {
    double lo = 0.0;
    double hi = 0.0;
    int points = 101;
    bool refine = true;

    static EnergySpec at(double E) { return {E, E, 1, false}; }
    static EnergySpec interval(double lo, double hi, int points = 101, bool refine = true) {
        return {lo, hi, points, refine};
    }
    bool single() const { return lo == hi; }
};

// Uniform grid over [lo, hi]; with refinement, every grid point where
// min_k dist(spectra[k], E) has a local minimum gets the midpoints to both neighbours.
std::vector<double> energy_grid(const EnergySpec& spec, const std::vector<const Eigen::VectorXd*>& spectra);

struct BadProbResult {
    ProbEstimate estimate;
    std::vector<SampleRecord> records;
};

// P{box fails `quality` at E, or at some grid energy of the interval}.
BadProbResult estimate_bad_prob(const ModelParams& params, const ParticleRectangle& box, const EnergySpec& energy,
                                const QualitySpec& quality, const McOptions& mc);

struct WegnerResult {
    MeanEstimate mean;  // of tr chi_I(H)
    double bound = 0.0; // n ||rho^(lambda)||_inf |I| L^{nd}
    bool verdict = false;
    std::vector<SampleRecord> records;
};

// Counts eigenvalues in the closed interval [lo, hi]; L is the largest side of `box`.
WegnerResult wegner_trace_check(const ModelParams& params, const ParticleRectangle& box, double lo, double hi,
                                const McOptions& mc);

struct BoundedProbResult {
    ProbEstimate estimate;
    double bound = 0.0;
    bool verdict = false;  // one-sided 99% upper bound <= bound
    std::vector<SampleRecord> records;
};

// P{dist(sigma(H), E) <= eps} against 2n ||rho^(lambda)||_inf eps L^{nd}.
BoundedProbResult resolvent_norm_prob(const ModelParams& params, const ParticleRectangle& box, double E, double eps,
                                      const McOptions& mc);

// P{dist(sigma(H_1), sigma(H_2)) <= eps} for partially separated boxes sharing one disorder
// field, against 2n ||rho^(lambda)||_inf eps L^{2nd}. With `independent_fields` the second
// box reads its own field (a resampling oracle, meaningful for fully separated boxes).
BoundedProbResult two_box_spectral_distance_prob(const ModelParams& params, const ParticleRectangle& first,
                                                 const ParticleRectangle& second, double eps, const McOptions& mc,
                                                 bool independent_fields = false);

struct IntervalEventResult {
    ProbEstimate estimate;
    std::string grid_note;  // how the interval was discretized
    std::vector<SampleRecord> records;
};

// P{some grid energy of I leaves both cubes of side L at x and y (m,E)-nonregular}.
// Requires the symmetrized Hausdorff distance of x and y to be at least L.
IntervalEventResult two_box_interval_event_prob(const ModelParams& params, const geometry::RealCenter& x,
                                                const geometry::RealCenter& y, double L, double m,
                                                const EnergySpec& energy, const McOptions& mc);

// Smallest one-particle box containing the projections of every listed box.
geometry::LatticeBox ambient_region(const std::vector<geometry::LatticeBox>& boxes);

// Minimum |a_i - b_j| of two ascending sequences.
double sorted_sequence_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace mpa::stochastic
