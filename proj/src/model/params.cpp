#include "mpa/model/params.hpp"

#include <cmath>
#include <limits>

namespace mpa::model {

Density Density::uniform(double lo, double hi) {
    if (!(hi > lo)) throw ContractError("density: need hi > lo");
    return {DensityFamily::Uniform, lo, hi};
}

Density Density::triangular(double lo, double hi) {
    if (!(hi > lo)) throw ContractError("density: need hi > lo");
    return {DensityFamily::Triangular, lo, hi};
}

double Density::sup() const {
    const double w = hi - lo;
    return family == DensityFamily::Uniform ? 1.0 / w : 2.0 / w;
}

double Density::pdf(double t) const {
    if (t < lo || t > hi) return 0.0;
    if (family == DensityFamily::Uniform) return 1.0 / (hi - lo);
    const double mid = 0.5 * (lo + hi);
    return sup() * (1.0 - std::abs(t - mid) / (mid - lo));
}

double Density::cdf(double t) const {
    if (t <= lo) return 0.0;
    if (t >= hi) return 1.0;
    const double w = hi - lo;
    if (family == DensityFamily::Uniform) return (t - lo) / w;
    const double mid = 0.5 * (lo + hi);
    if (t <= mid) return 2.0 * (t - lo) * (t - lo) / (w * w);
    return 1.0 - 2.0 * (hi - t) * (hi - t) / (w * w);
}

double Density::quantile(double u) const {
    const double w = hi - lo;
    if (family == DensityFamily::Uniform) return lo + w * u;
    if (u <= 0.5) return lo + w * std::sqrt(u / 2.0);
    return hi - w * std::sqrt((1.0 - u) / 2.0);
}

std::string Density::name() const { return family == DensityFamily::Uniform ? "uniform" : "triangular"; }

Interaction Interaction::step(int d, double r0, double u0) {
    if (d < 1 || !(r0 >= 0.0)) throw ContractError("interaction: d >= 1 and r0 >= 0 required");
    std::map<std::vector<Coord>, double> t;
    const auto R = static_cast<Coord>(std::floor(r0));
    std::vector<Coord> y(d, -R);
    while (true) {
        t[y] = u0;
        int k = d - 1;
        while (k >= 0 && y[k] == R) {
            y[k] = -R;
            --k;
        }
        if (k < 0) break;
        ++y[k];
    }
    return table(d, r0, t);
}

Interaction Interaction::table(int d, double r0, const std::map<std::vector<Coord>, double>& values) {
    Interaction out;
    out.d_ = d;
    out.r0_ = r0;
    for (const auto& [y, v] : values) {
        if (static_cast<int>(y.size()) != d) throw ContractError("interaction: displacement has wrong dimension");
        if (!std::isfinite(v)) throw ContractError("interaction: non-finite value");
        double norm = 0.0;
        for (Coord c : y) norm = std::max(norm, std::abs(static_cast<double>(c)));
        if (norm > r0 && v != 0.0) throw ContractError("interaction: nonzero value beyond r0");
        std::vector<Coord> minus(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) minus[k] = -y[k];
        const auto it = values.find(minus);
        const double mirror = it == values.end() ? 0.0 : it->second;
        if (mirror != v) throw ContractError("interaction: table must be even, U(y) = U(-y)");
        if (v != 0.0) out.table_[y] = v;
    }
    return out;
}

Interaction Interaction::none(int d) {
    Interaction out;
    out.d_ = d;
    return out;
}

double Interaction::operator()(std::span<const Coord> y) const {
    if (table_.empty()) return 0.0;
    const auto it = table_.find(std::vector<Coord>(y.begin(), y.end()));
    return it == table_.end() ? 0.0 : it->second;
}

double ModelParams::effective_density_sup() const {
    if (!(lambda > 0.0)) return std::numeric_limits<double>::infinity();
    return density.sup() / lambda;
}

void ModelParams::validate() const {
    if (n < 1 || d < 1) throw ContractError("model: n and d must be >= 1");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ContractError("model: lambda must be finite and >= 0");
    if (interaction.d() != d) throw ContractError("model: interaction dimension differs from d");
    if (!std::isfinite(diagonal_shift)) throw ContractError("model: diagonal shift must be finite");
}

ModelParams default_params(int n, int d) {
    ModelParams p;
    p.n = n;
    p.d = d;
    p.density = Density::uniform(0.0, 1.0);
    p.interaction = Interaction::step(d, 1.0, 1.0);
    return p;
}

ModelParams factor_params(const ModelParams& params, int count, bool keep_shift) {
    if (count < 1 || count > params.n) throw ContractError("model: factor particle count out of range");
    ModelParams p = params;
    p.n = count;
    if (!keep_shift) p.diagonal_shift = 0.0;
    return p;
}

}  // namespace mpa::model
