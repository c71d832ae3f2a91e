#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace mpa::stochastic {

inline constexpr double kZ95 = 1.959963984540054;       // two-sided 95%
inline constexpr double kZ99 = 2.5758293035489004;      // two-sided 99%
inline constexpr double kZ99OneSided = 2.3263478740408408;

// Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z);

struct ProbEstimate {
    double point = 0.0;
    double lower95 = 0.0, upper95 = 0.0;
    double lower99 = 0.0, upper99 = 0.0;
    double upper99_one_sided = 0.0;  // used by every pass/fail verdict
    std::size_t samples = 0;
    std::size_t successes = 0;
    std::uint64_t seed = 0;
    bool deterministic = false;      // outcome does not depend on the disorder: zero-width interval
};

ProbEstimate make_estimate(std::size_t successes, std::size_t samples, std::uint64_t seed, bool deterministic);

// Sample mean with a one-sided 99% normal upper bound mean + z s / sqrt(n).
struct MeanEstimate {
    double mean = 0.0;
    double stddev = 0.0;
    double upper99_one_sided = 0.0;
    std::size_t samples = 0;
};

MeanEstimate estimate_mean(const std::vector<double>& values);

}  // namespace mpa::stochastic
