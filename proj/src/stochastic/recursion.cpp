#include "mpa/stochastic/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpa/errors.hpp"

namespace mpa::stochastic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTermFloor = 1e-30;
constexpr long kMaxSumTerms = 10'000'000;

double log_p(double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw ContractError("recursion: p0 must lie in [0, 1]");
    return p0 == 0.0 ? -kInf : std::log(p0);
}

double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log of L_{k+1}^{-p}/2 + (C q)^{J+1} with everything in logs.
double one_step(double log_q, double log_C, int J, double p, double log_L_next) {
    return logaddexp(-std::log(2.0) - p * log_L_next, (J + 1) * (log_C + log_q));
}

}  // namespace

std::vector<Constraint> violated(const std::vector<Constraint>& constraints) {
    std::vector<Constraint> out;
    for (const auto& c : constraints)
        if (!c.holds()) out.push_back(c);
    return out;
}

Msa1Result recursion_msa1(const Msa1Params& P) {
    if (P.Y <= 1.0 || P.L0 <= 1.0 || P.J < 1 || P.N < 1 || P.d < 1 || !(P.p > 0.0) || P.max_steps < 1)
        throw ContractError("msa1: need Y > 1, L0 > 1, J >= 1, p > 0");
    Msa1Result out;
    const double logp0 = log_p(P.p0);
    const double log_C = P.N * P.d * std::log(2.0 * P.Y);
    const double a = (std::log(2.0) + log_C) / P.J;  // log(2C) / J
    const double logY = std::log(P.Y);

    out.preconditions = {
        {"Y >= 4000 N^(N+1)", 4000.0 * std::pow(P.N, P.N + 1), P.Y, false},
        {"p0 < (2Y)^(-Nd) / 2", logp0, -std::log(2.0) - log_C, true},
    };
    out.closure_scale = std::exp((std::log(2.0) + (P.J + 1) * log_C + P.p * logY) / (P.p * P.J));

    double lit = logp0;
    bool literal_live = true;
    for (int k = 0; k <= P.max_steps; ++k) {
        const double log_L = std::log(P.L0) + k * logY;
        const double thr = -P.p * log_L;
        const double bound = logp0 == -kInf ? -kInf : std::pow(P.J + 1.0, k) * (a + logp0) - a;
        out.L.push_back(std::exp(log_L));
        out.log_threshold.push_back(thr);
        out.log_bound.push_back(bound);
        if (!out.K0 && bound <= thr) out.K0 = k;
        if (literal_live) {
            if (k > 0) lit = one_step(lit, log_C, P.J, P.p, log_L);
            if (lit >= 0.0) {
                literal_live = false;
            } else {
                out.log_literal.push_back(lit);
                if (!out.literal_K && lit <= thr) out.literal_K = k;
            }
        }
        if (out.K0 && k >= *out.K0 + P.closure_steps) break;
    }
    if (!out.literal_K) out.literal_diverged = true;

    out.bound_monotone = true;
    for (std::size_t k = 1; k < out.log_bound.size(); ++k)
        if (logp0 != -kInf && !(out.log_bound[k] < out.log_bound[k - 1])) out.bound_monotone = false;

    if (out.K0) {
        double q = out.log_threshold[*out.K0];
        out.log_closure.push_back(q);
        out.closure_holds = true;
        for (int s = 1; s <= P.closure_steps; ++s) {
            const double log_L = std::log(P.L0) + (*out.K0 + s) * logY;
            const double next = one_step(q, log_C, P.J, P.p, log_L);
            if (!(next <= -P.p * log_L) || !(next < q)) out.closure_holds = false;
            out.log_closure.push_back(next);
            q = next;
        }
    }
    return out;
}

Msa2Result recursion_msa2(const Msa2Params& P) {
    Msa2Result out;
    const double Nd = static_cast<double>(P.N) * P.d;
    out.constraints = {
        {"1 < L0", 1.0, P.L0},
        {"0 < m0", 0.0, P.m0},
        {"1 < gamma", 1.0, P.gamma},
        {"gamma < 1 + p/(p+2Nd)", P.gamma, 1.0 + P.p / (P.p + 2.0 * Nd)},
        {"0 < kappa", 0.0, P.kappa},
        {"kappa < gamma - 1", P.kappa, P.gamma - 1.0},
        {"kappa < 1", P.kappa, 1.0},
    };
    if (P.beta) out.constraints.push_back({"kappa < gamma*(1-beta)", P.kappa, P.gamma * (1.0 - *P.beta)});
    if (P.L0 <= 1.0 || P.gamma <= 1.0 || P.kappa <= 0.0) return out;  // schedule undefined

    double log_L = std::log(P.L0);
    double m = P.m0;
    out.log_L.push_back(log_L);
    out.mass.push_back(m);
    double sum = 0.0;
    for (long j = 1; j <= kMaxSumTerms; ++j) {
        const double term = 0.5 * std::exp(-P.kappa * log_L);
        if (term < kTermFloor) break;
        sum += term;
        log_L *= P.gamma;
        if (static_cast<int>(out.mass.size()) <= P.max_steps) {
            m -= term;
            out.log_L.push_back(log_L);
            out.mass.push_back(m);
        }
    }
    out.halfmass_sum = sum;
    out.sum_condition = sum <= P.m0 / 2.0;
    out.min_mass = P.m0 - sum;
    out.mass_above_half = out.min_mass >= P.m0 / 2.0 &&
                          std::all_of(out.mass.begin(), out.mass.end(), [&](double v) { return v >= P.m0 / 2.0; });
    return out;
}

double msa3_min_Y(int N, double zeta0) {
    return std::exp(std::log(3800.0 * std::pow(N, N + 1)) / (1.0 - zeta0));
}

double msa3_max_log_p0(double Y, double zeta0, int N, int d) {
    return -(std::log(2.0) + N * d * std::log(2.0 * Y)) / (std::pow(Y, zeta0) - 1.0);
}

Msa3Result recursion_msa3(const Msa3Params& P) {
    if (P.Y <= 1.0 || P.L0 <= 1.0 || P.N < 1 || P.d < 1 || P.max_steps < 1 || !(P.log_p0 <= 0.0))
        throw ContractError("msa3: need Y > 1, L0 > 1, log p0 <= 0");
    Msa3Result out;
    const double log_C = P.N * P.d * std::log(2.0 * P.Y);
    const double logY = std::log(P.Y);
    out.J = std::floor(std::pow(P.Y, P.zeta0));
    if (out.J < 1.0) throw ContractError("msa3: Y^zeta0 must be at least 1");
    const double a = (std::log(2.0) + log_C) / out.J;
    out.c = a + P.log_p0;
    const double logJ1 = std::log(out.J + 1.0);

    out.preconditions = {
        {"0 < zeta1", 0.0, P.zeta1},
        {"zeta1 < zeta0", P.zeta1, P.zeta0},
        {"zeta0 < 1", P.zeta0, 1.0},
        {"Y >= (3800 N^(N+1))^(1/(1-zeta0))", std::log(3800.0 * std::pow(P.N, P.N + 1)) / (1.0 - P.zeta0), logY, false},
        {"p0 <= (2(2Y)^(Nd))^(-1/(Y^zeta0-1))", P.log_p0, msa3_max_log_p0(P.Y, P.zeta0, P.N, P.d), false},
        {"log(2(2Y)^(Nd))/J + log p0 < 0", out.c, 0.0},
    };

    for (int k = 0; k <= P.max_steps; ++k) {
        const double thr = P.zeta1 * (std::log(P.L0) + k * logY);
        double lb;
        if (P.log_p0 == -kInf) {
            lb = kInf;
        } else if (out.c < 0.0) {
            // -log bound = (J+1)^k |c| + a, taken in logs so huge J never overflows.
            const double head = k * logJ1 + std::log(-out.c);
            lb = head + std::log1p(std::exp(std::log(a) - head));
        } else {
            lb = std::log(std::max(0.0, a - std::pow(out.J + 1.0, k) * out.c));
        }
        out.loglog_bound.push_back(lb);
        out.loglog_threshold.push_back(thr);
        if (lb >= thr) {
            out.K1 = k;
            break;
        }
    }
    return out;
}

long long msa4_J(double L, double beta, double zeta2, double gamma) {
    if (!(L > 0.0) || !(gamma > 0.0)) throw ContractError("msa4 J: need L > 0 and gamma > 0");
    const double x = 2.0 * std::pow(L, beta - zeta2 / gamma);
    if (!std::isfinite(x) || x > 9e18) throw ContractError("msa4 J: value out of range");
    return 2 * static_cast<long long>(std::floor(x / 2.0)) + 2;
}

ChainReport validate_exponent_chain(const ExponentTuple& t) {
    ChainReport rep;
    auto& c = rep.checked;
    c = {
        {"0 < zeta", 0.0, t.zeta},
        {"zeta < zeta2", t.zeta, t.zeta2},
        {"zeta2 < gamma*zeta2", t.zeta2, t.gamma * t.zeta2},
        {"gamma*zeta2 < zeta1", t.gamma * t.zeta2, t.zeta1},
        {"zeta1 < gamma*zeta1", t.zeta1, t.gamma * t.zeta1},
        {"gamma*zeta1 < beta", t.gamma * t.zeta1, t.beta},
        {"beta < zeta0", t.beta, t.zeta0},
    };
    if (t.r) {
        c.push_back({"zeta0 < r", t.zeta0, *t.r});
        c.push_back({"r < tau", *t.r, t.tau});
    } else {
        c.push_back({"zeta0 < tau", t.zeta0, t.tau});
        rep.notes.push_back("r is a free slot between zeta0 and tau; only zeta0 < tau was checked");
    }
    c.push_back({"tau < 1", t.tau, 1.0});
    c.push_back({"zeta < tau", t.zeta, t.tau});
    c.push_back({"zeta*gamma^2 < zeta2", t.zeta * t.gamma * t.gamma, t.zeta2});
    if (t.kappa) {
        c.push_back({"0 < kappa", 0.0, *t.kappa});
        c.push_back({"kappa < gamma - 1", *t.kappa, t.gamma - 1.0});
        c.push_back({"kappa < gamma*(1-beta)", *t.kappa, t.gamma * (1.0 - t.beta)});
        c.push_back({"kappa < 1", *t.kappa, 1.0});
    }
    const double Nd = static_cast<double>(t.N) * t.d;
    if (t.p) {
        c.push_back({"0 < p", 0.0, *t.p});
        c.push_back({"gamma < 1 + p/(p+2Nd)", t.gamma, 1.0 + *t.p / (*t.p + 2.0 * Nd)});
        if (t.s) c.push_back({"p + Nd < s", *t.p + Nd, *t.s});
    }
    if (t.s && t.theta) c.push_back({"s + 2Nd - 2 < theta", *t.s + 2.0 * Nd - 2.0, *t.theta});
    if (t.theta) c.push_back({"8Nd < theta", 8.0 * Nd, *t.theta});
    rep.violations = violated(c);
    return rep;
}

}  // namespace mpa::stochastic
