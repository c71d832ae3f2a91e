#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpa/geometry/lattice.hpp"
#include "mpa/model/params.hpp"

namespace mpa::model {

// Counter-based stream: omega at a site is a pure function of (seed, sample_index, site),
// so results never depend on evaluation order or thread count.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t site_key(std::uint64_t seed, std::uint64_t sample_index, std::span<const Coord> site);
// Uniform on the open interval (0, 1) with 53 random bits.
double key_to_unit(std::uint64_t key);

class DisorderField {
public:
    DisorderField(Density density, std::uint64_t seed, std::uint64_t sample_index)
        : density_(density), seed_(seed), sample_(sample_index) {}
    double operator()(std::span<const Coord> site) const;
    std::uint64_t seed() const { return seed_; }
    std::uint64_t sample_index() const { return sample_; }
    const Density& density() const { return density_; }

private:
    Density density_;
    std::uint64_t seed_;
    std::uint64_t sample_;
};

// omega on a one-particle region of Z^d, canonical (lexicographic) site order.
struct DisorderSample {
    geometry::LatticeBox region;
    std::vector<double> omega;
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;

    double at(std::span<const Coord> site) const;
};

DisorderSample sample_disorder(const ModelParams& params, const geometry::LatticeBox& region, std::uint64_t seed,
                               std::uint64_t sample_index);

}  // namespace mpa::model
