#include "mpa/stochastic/stats.hpp"

#include <algorithm>
#include <cmath>

#include "mpa/errors.hpp"

namespace mpa::stochastic {

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0 || k > n) throw ContractError("wilson: need 0 <= k <= n and n > 0");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    // Clamp so the interval always contains the point estimate despite rounding.
    return {std::clamp(std::min(center - half, p), 0.0, 1.0), std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

ProbEstimate make_estimate(std::size_t successes, std::size_t samples, std::uint64_t seed, bool deterministic) {
    ProbEstimate e;
    e.samples = samples;
    e.successes = successes;
    e.seed = seed;
    e.deterministic = deterministic;
    e.point = static_cast<double>(successes) / static_cast<double>(samples);
    if (deterministic) {
        e.lower95 = e.upper95 = e.lower99 = e.upper99 = e.upper99_one_sided = e.point;
        return e;
    }
    std::tie(e.lower95, e.upper95) = wilson_interval(successes, samples, kZ95);
    std::tie(e.lower99, e.upper99) = wilson_interval(successes, samples, kZ99);
    e.upper99_one_sided = wilson_interval(successes, samples, kZ99OneSided).second;
    return e;
}

MeanEstimate estimate_mean(const std::vector<double>& values) {
    if (values.empty()) throw ContractError("estimate_mean: no samples");
    MeanEstimate m;
    m.samples = values.size();
    const double n = static_cast<double>(values.size());
    double s = 0.0;
    for (double v : values) s += v;
    m.mean = s / n;
    double q = 0.0;
    for (double v : values) q += (v - m.mean) * (v - m.mean);
    m.stddev = values.size() > 1 ? std::sqrt(q / (n - 1.0)) : 0.0;
    m.upper99_one_sided = m.mean + kZ99OneSided * m.stddev / std::sqrt(n);
    return m;
}

}  // namespace mpa::stochastic
