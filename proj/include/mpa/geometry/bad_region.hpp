#pragma once

#include <cstdint>
#include <vector>

#include "mpa/geometry/cover.hpp"

namespace mpa::geometry {

// k_1 = 6, k_j = min{k in N : k > k_{j-1} + 6 + 2/(N alpha)}.
std::vector<std::int64_t> k_multipliers(int count, int N, double alpha);
// Exact variant using the cover's own spacing.
std::vector<std::int64_t> k_multipliers(int count, const SuitableCover& cover);
// K_j = 2 k_j N alpha + 1.
std::vector<double> K_multipliers(int count, int N, double alpha);

struct BadRegionMember {
    LatticeIndex center;
    int j = 1;
    std::int64_t k_j = 6;
    double K = 0.0;   // side is K * ell
    LatticeBox box;
    int seeds = 0;    // halo seeds absorbed into this member
};

struct BadRegion {
    int N = 0;
    std::size_t S = 0;
    std::vector<BadRegionMember> members;

    bool contains(const ConfigPoint& y) const;
    double sum_K() const;
};

// Greedy agglomeration: one K_1 box per halo Lambda_{(4N+2) ell}(b), b in S_a^N,
// merged into the smallest fitting K_j box until members are more than 1 apart.
// Throws RegionOverflow when a member cannot be placed inside the parent.
BadRegion build_bad_region(const SuitableCover& cover, const std::vector<LatticeIndex>& bad_centers);

struct BadRegionCheck {
    bool inside_parent = false;
    bool separated = false;         // pairwise sup distance > 1
    bool boundary_clear = false;    // outer boundary of each member misses the union
    bool multipliers_in_range = false;
    bool sum_bound = false;         // sum K_j <= 17 S N^{N+1}
    bool exterior_distant = false;  // outside the union, cover boxes are ell-distant from all bad boxes
    double sum_K = 0.0;
    double sum_K_bound = 0.0;
    std::size_t dangerous_centers = 0;

    bool all() const {
        return inside_parent && separated && boundary_clear && multipliers_in_range && sum_bound && exterior_distant;
    }
};

BadRegionCheck check_bad_region(const SuitableCover& cover, const std::vector<LatticeIndex>& bad_centers,
                                const BadRegion& region);

}  // namespace mpa::geometry
