#include "mpa/model/disorder.hpp"

namespace mpa::model {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t site_key(std::uint64_t seed, std::uint64_t sample_index, std::span<const Coord> site) {
    std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dULL);
    h = mix64(h ^ sample_index);
    for (Coord c : site) h = mix64(h ^ static_cast<std::uint64_t>(c));
    return h;
}

double key_to_unit(std::uint64_t key) {
    return (static_cast<double>(key >> 11) + 0.5) * 0x1.0p-53;
}

double DisorderField::operator()(std::span<const Coord> site) const {
    return density_.quantile(key_to_unit(site_key(seed_, sample_, site)));
}

double DisorderSample::at(std::span<const Coord> site) const {
    if (!region.contains(site.data())) throw ContractError("disorder: site outside the sampled region");
    return omega[region.index_of(site.data())];
}

DisorderSample sample_disorder(const ModelParams& params, const geometry::LatticeBox& region, std::uint64_t seed,
                               std::uint64_t sample_index) {
    if (region.n() != 1 || region.d() != params.d) throw ContractError("disorder: region must be a box in Z^d");
    const DisorderField field(params.density, seed, sample_index);
    DisorderSample out;
    out.region = region;
    out.seed = seed;
    out.sample_index = sample_index;
    const std::size_t count = region.size();
    if (count > geometry::kDefaultPointCap) throw CapExceeded("disorder: region too large");
    out.omega.resize(count);
    std::vector<Coord> site(params.d);
    for (std::size_t i = 0; i < count; ++i) {
        region.point_at(i, site.data());
        out.omega[i] = field(site);
    }
    return out;
}

}  // namespace mpa::model
