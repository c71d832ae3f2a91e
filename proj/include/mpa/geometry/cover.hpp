#pragma once

#include <optional>
#include <vector>

#include "mpa/geometry/lattice.hpp"
#include "mpa/geometry/rational.hpp"

namespace mpa::geometry {

// alpha = max of [3/5, 4/5] intersected with {(L - ell)/(2 ell k) : k in N}.
struct AlphaChoice {
    double alpha = 0.0;
    int k = 0;
};
std::optional<AlphaChoice> select_alpha(double L, double ell);

// Per-axis lattice indices; the center on axis a is origin_a + i_a * alpha * ell.
using LatticeIndex = std::vector<std::int64_t>;

// Cover of Lambda_L(x) by the boxes Lambda_ell(a), a in (x + alpha ell Z^{nd}) within the
// closed real cube of side L around x. All lattice arithmetic is exact.
class SuitableCover {
public:
    // Requires ell <= L/6; throws NoValidAlpha when no spacing qualifies.
    SuitableCover(double L, double ell, RealCenter x);

    double L() const { return L_; }
    double ell() const { return ell_; }
    double alpha() const { return alpha_; }
    int k() const { return k_; }
    int n() const { return origin_.n; }
    int d() const { return origin_.d; }
    int axes() const { return origin_.n * origin_.d; }
    const RealCenter& origin() const { return origin_; }
    const LatticeBox& parent() const { return parent_; }
    // Centers on each axis use indices in [-limit, limit].
    std::int64_t limit() const { return limit_; }
    std::size_t size() const;

    std::vector<LatticeIndex> centers() const;  // lexicographic
    bool is_member(const LatticeIndex& c) const;
    RealCenter center(const LatticeIndex& c) const;
    Rational coordinate(int axis, std::int64_t i) const;
    Rational step() const { return step_; }
    Rational ell_exact() const { return ell_q_; }

    // Lambda_ell(c) on the lattice.
    LatticeBox member_box(const LatticeIndex& c) const;
    // Lambda_{(2 m alpha + 1) ell}(c) on the lattice.
    LatticeBox scaled_box(const LatticeIndex& c, std::int64_t m) const;
    // Lambda_{side}(c) for a box side given exactly.
    LatticeBox box(const LatticeIndex& c, const Rational& side) const;

    // Lexicographically smallest c with Lambda_{ell/10}(b) cap parent inside Lambda_ell(c).
    LatticeIndex cover_index_for(const ConfigPoint& b) const;
    // For every integer y of the parent range on this axis, the index chosen by cover_index_for.
    const std::vector<std::int64_t>& axis_assignment(int axis) const { return assignment_[axis]; }

    // ell-distance of two cover boxes: max{dist(b, S_a^n), dist(a, S_b^n)} >= 2 n ell.
    bool ell_distant(const LatticeIndex& a, const LatticeIndex& b) const;
    // Same predicate between cover box c and an arbitrary rational configuration.
    bool ell_distant(const LatticeIndex& c, const std::vector<Rational>& a) const;
    std::vector<Rational> exact_center(const LatticeIndex& c) const;

private:
    double L_;
    double ell_;
    double alpha_;
    int k_;
    RealCenter origin_;
    std::vector<Rational> origin_q_;
    Rational L_q_, ell_q_, step_;
    std::int64_t limit_;
    LatticeBox parent_;
    std::vector<std::vector<std::int64_t>> assignment_;
};

// Exact integer range {y : |y - c| <= side/2}.
AxisRange exact_range(const Rational& c, const Rational& side);

struct CoverCheck {
    bool union_equals_parent = false;
    bool covering = false;        // every parent site has a cover box with its ell/10 core
    bool core_disjoint = false;   // Lambda_{ell/5}(a) misses Lambda_ell(b) for a != b
    bool count_bounds = false;    // (L/ell)^{nd} <= #Xi <= (2L/ell)^{nd}
    bool count_formula = false;   // #Xi = ((L - ell)/(alpha ell) + 1)^{nd}
    bool nesting = false;         // big boxes are unions of member boxes
    std::size_t count = 0;

    bool all() const {
        return union_equals_parent && covering && core_disjoint && count_bounds && count_formula && nesting;
    }
};

CoverCheck check_cover(const SuitableCover& cover);

}  // namespace mpa::geometry
