#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpa/geometry/configuration.hpp"

namespace mpa::model {

using geometry::Coord;

enum class DensityFamily { Uniform, Triangular };

// Single-site density: uniform on [lo, hi] or symmetric triangular on [lo, hi].
struct Density {
    DensityFamily family = DensityFamily::Uniform;
    double lo = 0.0;
    double hi = 1.0;

    static Density uniform(double lo, double hi);
    static Density triangular(double lo, double hi);

    double sup() const;  // ||rho||_inf
    double pdf(double t) const;
    double cdf(double t) const;
    double quantile(double u) const;
    std::string name() const;
};

// Even, finite-range pair potential U~ on Z^d; zero for ||y||_inf > r0.
class Interaction {
public:
    Interaction() = default;
    // u0 * 1{||y||_inf <= r0}.
    static Interaction step(int d, double r0, double u0);
    // Explicit table of displacement -> value; missing entries are zero.
    static Interaction table(int d, double r0, const std::map<std::vector<Coord>, double>& values);
    static Interaction none(int d);

    int d() const { return d_; }
    double r0() const { return r0_; }
    double operator()(std::span<const Coord> y) const;
    const std::map<std::vector<Coord>, double>& entries() const { return table_; }

private:
    int d_ = 1;
    double r0_ = 0.0;
    std::map<std::vector<Coord>, double> table_;
};

struct ModelParams {
    int n = 1;
    int d = 1;
    double lambda = 1.0;
    Density density;
    Interaction interaction;
    double diagonal_shift = 0.0;  // added to every diagonal entry

    // ||rho^(lambda)||_inf = ||rho||_inf / lambda for the scaled site potential lambda * omega.
    double effective_density_sup() const;
    void validate() const;
};

ModelParams default_params(int n, int d);

// Same model for a subset of `count` particles; the diagonal shift is kept only on request
// so that the two factors of a split box add up to the full operator.
ModelParams factor_params(const ModelParams& params, int count, bool keep_shift);

}  // namespace mpa::model
