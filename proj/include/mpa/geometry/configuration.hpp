#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mpa/errors.hpp"

namespace mpa::geometry {

using Coord = std::int64_t;

// n particles in Z^d (or R^d), stored particle-major: x[i*d + k].
template <class T>
struct Configuration {
    int n = 0;
    int d = 0;
    std::vector<T> x;

    Configuration() = default;
    Configuration(int n_, int d_) : n(n_), d(d_), x(static_cast<std::size_t>(n_) * d_, T{}) {}
    Configuration(int n_, int d_, std::vector<T> v) : n(n_), d(d_), x(std::move(v)) {
        if (n_ < 1 || d_ < 1 || x.size() != static_cast<std::size_t>(n_) * d_)
            throw ContractError("configuration: coordinate count must equal n*d");
    }

    T& operator()(int i, int k) { return x[static_cast<std::size_t>(i) * d + k]; }
    const T& operator()(int i, int k) const { return x[static_cast<std::size_t>(i) * d + k]; }
    std::span<const T> particle(int i) const {
        return {x.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }

    auto operator<=>(const Configuration&) const = default;
    bool operator==(const Configuration&) const = default;
};

using ConfigPoint = Configuration<Coord>;
using RealCenter = Configuration<double>;

inline RealCenter to_real(const ConfigPoint& p) {
    RealCenter r(p.n, p.d);
    for (std::size_t k = 0; k < p.x.size(); ++k) r.x[k] = static_cast<double>(p.x[k]);
    return r;
}

template <class A, class B>
double particle_gap(std::span<const A> a, std::span<const B> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(static_cast<double>(a[k]) - static_cast<double>(b[k])));
    return m;
}

// ||a|| = max_i ||a_i||_inf.
template <class T>
double sup_norm(const Configuration<T>& a) {
    double m = 0.0;
    for (const auto& v : a.x) m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
}

// <a> = sqrt(1 + ||a||^2).
template <class T>
double bracket(const Configuration<T>& a) {
    const double s = sup_norm(a);
    return std::sqrt(1.0 + s * s);
}

template <class A, class B>
double distance(const Configuration<A>& a, const Configuration<B>& b) {
    if (a.n != b.n || a.d != b.d) throw ContractError("distance: shape mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.x.size(); ++k)
        m = std::max(m, std::abs(static_cast<double>(a.x[k]) - static_cast<double>(b.x[k])));
    return m;
}

// dist(b_i, S_a) for one particle of b.
template <class A, class B>
double particle_to_set(std::span<const B> bi, const Configuration<A>& a) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < a.n; ++j) best = std::min(best, particle_gap(bi, a.particle(j)));
    return best;
}

// Hausdorff distance between the particle sets S_a and S_b.
template <class A, class B>
double hausdorff(const Configuration<A>& a, const Configuration<B>& b) {
    if (a.d != b.d) throw ContractError("hausdorff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.n; ++i) m = std::max(m, particle_to_set(a.particle(i), b));
    for (int j = 0; j < b.n; ++j) m = std::max(m, particle_to_set(b.particle(j), a));
    return m;
}

// dist(S_a, S_b) = min over particle pairs.
template <class A, class B>
double set_distance(const Configuration<A>& a, const Configuration<B>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.n; ++i) best = std::min(best, particle_to_set(a.particle(i), b));
    return best;
}

// dist(b, S_a^n) = max_i dist(b_i, S_a).
template <class A, class B>
double distance_to_product(const Configuration<B>& b, const Configuration<A>& a) {
    double m = 0.0;
    for (int i = 0; i < b.n; ++i) m = std::max(m, particle_to_set(b.particle(i), a));
    return m;
}

template <class T>
double diam(const Configuration<T>& a) {
    double m = 0.0;
    for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j) m = std::max(m, particle_gap(a.particle(i), a.particle(j)));
    return m;
}

}  // namespace mpa::geometry
