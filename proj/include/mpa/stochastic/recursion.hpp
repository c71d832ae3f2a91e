#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mpa::stochastic {

// One inequality lhs < rhs (or lhs <= rhs when `strict` is false).
struct Constraint {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool strict = true;
    bool holds() const { return strict ? lhs < rhs : lhs <= rhs; }
};

std::vector<Constraint> violated(const std::vector<Constraint>& constraints);

// ---- polynomial scale, L_{k+1} = Y L_k, J + 1 boxes per bad cluster ----

struct Msa1Params {
    double p0 = 0.0;
    double Y = 4000.0;
    int N = 1;
    int d = 1;
    double p = 1.0;
    int J = 1;
    double L0 = 1e5;
    int max_steps = 64;
    int closure_steps = 8;  // steps checked after K0
};

struct Msa1Result {
    std::vector<double> L;              // L_k
    std::vector<double> log_threshold;  // -p log L_k
    // log of the closed-form bound (2C)^{((J+1)^k - 1)/J} p0^{(J+1)^k}, C = (2Y)^{Nd}.
    std::vector<double> log_bound;
    // log of the one-step recursion p_{k+1} = L_{k+1}^{-p}/2 + (C p_k)^{J+1} started at p0.
    std::vector<double> log_literal;
    std::optional<int> K0;              // first k with closed-form bound <= L_k^{-p}
    std::optional<int> literal_K;       // same for the one-step recursion
    bool literal_diverged = false;      // one-step recursion reached 1 before the threshold
    // Scale above which p_ell <= ell^{-p} propagates one step: (2 C^{J+1} Y^p)^{1/(pJ)}.
    double closure_scale = 0.0;
    // Starting from the threshold value at K0, the recursion stays below threshold and decreases.
    std::vector<double> log_closure;    // closure_steps + 1 values, from K0 on
    bool closure_holds = false;
    bool bound_monotone = false;        // closed-form bounds strictly decrease
    std::vector<Constraint> preconditions;
    bool preconditions_hold() const { return violated(preconditions).empty(); }
};

Msa1Result recursion_msa1(const Msa1Params& params);

// ---- power scale, L_{k+1} = L_k^gamma, mass loss 1/2 L^{-kappa} per step ----

struct Msa2Params {
    double L0 = 100.0;
    double m0 = 1.0;
    double gamma = 1.2;
    double kappa = 0.1;
    double p = 1.0;
    int N = 1;
    int d = 1;
    std::optional<double> beta = std::nullopt;  // adds kappa < gamma (1 - beta)
    int max_steps = 200;
};

struct Msa2Result {
    std::vector<double> log_L;  // log L_k
    std::vector<double> mass;   // m_k
    double halfmass_sum = 0.0;  // 1/2 sum_j L0^{-kappa gamma^{j-1}}
    bool sum_condition = false; // halfmass_sum <= m0 / 2
    double min_mass = 0.0;
    bool mass_above_half = false;  // every m_k >= m0 / 2
    std::vector<Constraint> constraints;
    bool valid() const { return violated(constraints).empty(); }
};

Msa2Result recursion_msa2(const Msa2Params& params);

// ---- subexponential scale, J = floor(Y^zeta0), threshold e^{-L^zeta1} ----

struct Msa3Params {
    double log_p0 = 0.0;  // -inf for p0 = 0
    double Y = 0.0;
    double zeta0 = 0.9;
    double zeta1 = 0.8;
    int N = 1;
    int d = 1;
    double L0 = 1e5;
    int max_steps = 64;
};

struct Msa3Result {
    double J = 0.0;
    double c = 0.0;  // log(2C)/J + log p0; the bound shrinks iff c < 0
    // Both sequences as log(-log .): bound and threshold e^{-L_k^zeta1}.
    std::vector<double> loglog_bound;
    std::vector<double> loglog_threshold;
    std::optional<int> K1;
    std::vector<Constraint> preconditions;
    bool preconditions_hold() const { return violated(preconditions).empty(); }
};

Msa3Result recursion_msa3(const Msa3Params& params);

// Smallest admissible Y = (3800 N^{N+1})^{1/(1 - zeta0)}.
double msa3_min_Y(int N, double zeta0);
// log of the largest admissible p0 = (2 (2Y)^{Nd})^{-1/(Y^zeta0 - 1)}.
double msa3_max_log_p0(double Y, double zeta0, int N, int d);

// Even J with 2 L^{beta - zeta2/gamma} < J <= 2 L^{beta - zeta2/gamma} + 2.
long long msa4_J(double L, double beta, double zeta2, double gamma);

struct ExponentTuple {
    double zeta = 0.0, zeta2 = 0.0, zeta1 = 0.0, beta = 0.0, zeta0 = 0.0, tau = 0.0, gamma = 0.0;
    std::optional<double> r = std::nullopt;  // free slot between zeta0 and tau
    std::optional<double> kappa = std::nullopt;
    std::optional<double> p = std::nullopt, s = std::nullopt, theta = std::nullopt;
    int N = 1;
    int d = 1;
};

struct ChainReport {
    std::vector<Constraint> checked;
    std::vector<Constraint> violations;
    std::vector<std::string> notes;
};

ChainReport validate_exponent_chain(const ExponentTuple& t);

}  // namespace mpa::stochastic
