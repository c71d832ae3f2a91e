#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "mpa/geometry/lattice.hpp"
#include "mpa/model/disorder.hpp"
#include "mpa/model/params.hpp"

namespace mpa::model {

inline constexpr std::size_t kDenseCap = 4096;

// H = -Delta + lambda V_omega + U restricted to a rectangle (plain truncation:
// diagonal 2nd + lambda sum_i omega(x_i) + U(x) + shift, off-diagonal -1 on nearest neighbours).
struct FiniteVolumeOperator {
    geometry::ParticleRectangle rect;
    geometry::LatticeBox lattice;
    Eigen::MatrixXd H;
    std::vector<Coord> coords;  // dim() rows of n*d coordinates

    std::size_t dim() const { return static_cast<std::size_t>(H.rows()); }
    int axes() const { return lattice.n() * lattice.d(); }
    const Coord* point(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(axes()); }
    // ||x_i - x_j|| between two basis sites.
    double site_distance(std::size_t i, std::size_t j) const;
};

FiniteVolumeOperator assemble(const geometry::ParticleRectangle& rect, const DisorderSample& sample,
                              const ModelParams& params, std::size_t cap = kDenseCap);
FiniteVolumeOperator assemble(const geometry::ParticleRectangle& rect, const DisorderField& field,
                              const ModelParams& params, std::size_t cap = kDenseCap);

// Restriction to a sub-rectangle; equals assembling the sub-rectangle from the same sample.
FiniteVolumeOperator restrict_to(const FiniteVolumeOperator& op, const geometry::ParticleRectangle& sub);
// Restriction to an arbitrary lattice sub-box; `rect` of the result is only the bounding rectangle.
FiniteVolumeOperator restrict_to(const FiniteVolumeOperator& op, const geometry::LatticeBox& sub);

// Map from lattice indices of `sub` into `op`.
std::vector<std::size_t> embedding(const FiniteVolumeOperator& op, const geometry::LatticeBox& sub);

struct Spectrum {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, when requested
    bool has_vectors = false;
    double residual = 0.0;    // max |H v - lambda v| over columns, when vectors exist
};

// Dense symmetric eigensolve; throws CapExceeded above `cap` and NumericFailure when
// the residual exceeds 1e-9 ||H||.
Spectrum compute_spectrum(const FiniteVolumeOperator& op, bool want_vectors, std::size_t cap = kDenseCap);
Spectrum compute_spectrum(const Eigen::MatrixXd& H, bool want_vectors, std::size_t cap = kDenseCap);

// Groups of eigenvalue indices whose consecutive gaps are <= tol.
std::vector<std::vector<std::size_t>> eigenvalue_clusters(const Eigen::VectorXd& values, double tol = 1e-9);

// min_k |values_k - E|.
double spectral_distance(const Eigen::VectorXd& values, double E);

// Upper triangle (i <= j) as "i j value" lines, shortest round-trip decimals.
void write_coo(std::ostream& out, const FiniteVolumeOperator& op);

}  // namespace mpa::model
