#include "mpa/geometry/separation.hpp"

#include <numeric>

namespace mpa::geometry {

Interactivity classify_interactivity(const LatticeBox& box, double r0) {
    const int n = box.n();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<double>(lattice_distance(box.particle_box(i), box.particle_box(j))) <= r0)
                parent[find(j)] = find(i);

    Interactivity out;
    out.component.assign(n, -1);
    int labels = 0;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (out.component[root] < 0) out.component[root] = labels++;
        out.component[i] = out.component[root];
    }
    out.partially_interactive = labels > 1;
    if (out.partially_interactive) {
        for (int i = 0; i < n; ++i) (out.component[i] == 0 ? out.J : out.J_complement).push_back(i);
    }
    return out;
}

Interactivity classify_interactivity(const ParticleRectangle& box, double r0) {
    return classify_interactivity(lattice_box(box), r0);
}

namespace {

bool misses_projection(const LatticeBox& one, const LatticeBox& other) {
    for (int j = 0; j < other.n(); ++j)
        if (one.intersects(other.particle_box(j))) return false;
    return true;
}

}  // namespace

bool partially_separated(const LatticeBox& a, const LatticeBox& b) {
    if (a.d() != b.d()) throw ContractError("separation: dimension mismatch");
    for (int i = 0; i < a.n(); ++i)
        if (misses_projection(a.particle_box(i), b)) return true;
    for (int j = 0; j < b.n(); ++j)
        if (misses_projection(b.particle_box(j), a)) return true;
    return false;
}

bool fully_separated(const LatticeBox& a, const LatticeBox& b) {
    if (a.d() != b.d()) throw ContractError("separation: dimension mismatch");
    for (int i = 0; i < a.n(); ++i)
        if (!misses_projection(a.particle_box(i), b)) return false;
    return true;
}

bool partially_separated(const ParticleRectangle& a, const ParticleRectangle& b) {
    return partially_separated(lattice_box(a), lattice_box(b));
}

bool fully_separated(const ParticleRectangle& a, const ParticleRectangle& b) {
    return fully_separated(lattice_box(a), lattice_box(b));
}

bool partially_separated_by_hausdorff(const RealCenter& x, const RealCenter& y, double L) {
    return hausdorff(x, y) > L;
}

bool fully_separated_by_set_distance(const RealCenter& x, const RealCenter& y, double L) {
    return set_distance(x, y) > L;
}

bool L_distant(const RealCenter& a, const RealCenter& b, double L) {
    if (a.n != b.n || a.d != b.d) throw ContractError("L_distant: shape mismatch");
    const double reach = std::max(distance_to_product(b, a), distance_to_product(a, b));
    return reach >= 2.0 * a.n * L;
}

}  // namespace mpa::geometry
