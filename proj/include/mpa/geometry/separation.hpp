#pragma once

#include <vector>

#include "mpa/geometry/lattice.hpp"

namespace mpa::geometry {

// Partially interactive boxes split into J and J^c with every cross pair
// farther apart than r0 everywhere in the box.
struct Interactivity {
    bool partially_interactive = false;
    std::vector<int> J;        // lowest-index component, ascending
    std::vector<int> J_complement;
    std::vector<int> component;  // component label per particle
};

// Particles i, j are linked when their one-particle boxes are within r0.
Interactivity classify_interactivity(const ParticleRectangle& box, double r0);
Interactivity classify_interactivity(const LatticeBox& box, double r0);

// Some one-particle box of one rectangle misses the other's projection.
bool partially_separated(const ParticleRectangle& a, const ParticleRectangle& b);
bool partially_separated(const LatticeBox& a, const LatticeBox& b);
// The projections are disjoint.
bool fully_separated(const ParticleRectangle& a, const ParticleRectangle& b);
bool fully_separated(const LatticeBox& a, const LatticeBox& b);

// Cheap sufficient conditions for boxes of side L centered at x and y.
bool partially_separated_by_hausdorff(const RealCenter& x, const RealCenter& y, double L);
bool fully_separated_by_set_distance(const RealCenter& x, const RealCenter& y, double L);

// max{dist(b, S_a^n), dist(a, S_b^n)} >= 2 n L.
bool L_distant(const RealCenter& a, const RealCenter& b, double L);

}  // namespace mpa::geometry
