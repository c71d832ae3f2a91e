#pragma once

#include <array>
#include <string>

#include "mpa/resolvent/green.hpp"

namespace mpa::resolvent {

enum class QualityKind { Suitable, Ses, Regular, SuitablyNonresonant, Nonresonant, Good };

std::string to_string(QualityKind kind);
QualityKind quality_kind_from_string(const std::string& name);

// parameter is theta, zeta, m, s or beta by kind; Good uses parameter = m and beta.
struct QualitySpec {
    QualityKind kind = QualityKind::Suitable;
    double parameter = 0.0;
    double beta = 0.0;

    static QualitySpec suitable(double theta) { return {QualityKind::Suitable, theta, 0.0}; }
    static QualitySpec ses(double zeta) { return {QualityKind::Ses, zeta, 0.0}; }
    static QualitySpec regular(double m) { return {QualityKind::Regular, m, 0.0}; }
    static QualitySpec suitably_nonresonant(double s) { return {QualityKind::SuitablyNonresonant, s, 0.0}; }
    static QualitySpec nonresonant(double beta) { return {QualityKind::Nonresonant, beta, 0.0}; }
    static QualitySpec good(double m, double beta) { return {QualityKind::Good, m, beta}; }
};

// Green function of one box at one energy, plus what the classifiers need.
// `side` is the nominal box side L that enters every threshold.
struct GreenSnapshot {
    double E = 0.0;
    double side = 1.0;
    double dist = 0.0;      // dist(sigma(H), E)
    bool guarded = false;   // dist <= 1e-12: no resolvent formed
    int n = 0, d = 0, axes = 0;
    std::vector<Coord> coords;
    Eigen::MatrixXd G;      // empty when guarded

    std::size_t dim() const { return coords.size() / static_cast<std::size_t>(axes); }
    // Pairs with ||a - b|| >= max(1, L/100) enter the Green-function predicates.
    double pair_threshold() const { return std::max(1.0, side / 100.0); }
    double pair_distance(std::size_t i, std::size_t j) const;
};

GreenSnapshot snapshot(const FiniteVolumeOperator& op, const Spectrum& spectrum, double E, double side);
// Uses a fresh eigendecomposition and side = the smallest rectangle side.
GreenSnapshot snapshot(const FiniteVolumeOperator& op, double E);

struct BoxQualityReport {
    double E = 0.0;
    double side = 1.0;
    QualitySpec spec;
    bool verdict = false;
    bool guarded = false;
    double dist = 0.0;
    // Extremal pair: the eligible pair with the largest score (absent when no pair qualifies).
    bool has_pair = false;
    std::size_t a = 0, b = 0;
    ConfigPoint point_a, point_b;
    double abs_g = 0.0;
    double r = 0.0;
    // <= 0 means the Green-function inequality holds at the extremal pair.
    double score = 0.0;
};

BoxQualityReport classify(const GreenSnapshot& snap, const QualitySpec& spec);
BoxQualityReport classify(const FiniteVolumeOperator& op, double E, const QualitySpec& spec);

// Recomputes the verdict from the stored extremal data only.
bool verdict_from_report(const BoxQualityReport& report);

bool is_good(const GreenSnapshot& snap, double m, double beta);
bool is_good(const FiniteVolumeOperator& op, double E, double m, double beta);

// Thresholds L^{-s} and 1/2 e^{-L^beta}.
double suitable_resonance_threshold(double side, double s);
double resonance_threshold(double side, double beta);

// Largest parameters for which the box still qualifies, from the eligible pairs.
struct AchievedExponents {
    bool has_pairs = false;
    double max_log_g = -std::numeric_limits<double>::infinity();
    double min_rate = std::numeric_limits<double>::infinity();  // min over pairs of -log|G| / r
    double theta() const;  // -max_log_g / log L
    double mass() const { return min_rate; }
    double zeta() const;   // log(-max_log_g) / log L
    double side = 1.0;
};

AchievedExponents achieved_exponents(const GreenSnapshot& snap);

// One "premise quality => conclusion quality" statement evaluated on the same Green data.
struct Implication {
    QualitySpec premise_spec, conclusion_spec;
    bool premise = false;
    bool conclusion = false;
    bool holds() const { return !premise || conclusion; }
};

// The four conversions between the Green-function qualities on a box of side L > 1:
// (m, E)-regular => (mL/(100 log L), E)-suitable; (theta, E)-suitable => (theta log L / L, E)-regular;
// (L^{zeta-1}, E)-regular => (zeta - log 100 / log L, E)-SES; (zeta, E)-SES => (L^{zeta-1}, E)-regular.
std::array<Implication, 4> quality_implications(const GreenSnapshot& snap, double m, double theta, double zeta);

}  // namespace mpa::resolvent
