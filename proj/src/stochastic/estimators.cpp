#include "mpa/stochastic/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "mpa/errors.hpp"
#include "mpa/geometry/separation.hpp"
#include "mpa/model/disorder.hpp"
#include "mpa/model/hamiltonian.hpp"
#include "mpa/stochastic/parallel.hpp"

namespace mpa::stochastic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kOracleStream = 0x9e3779b97f4a7c15ULL;

void require_samples(const McOptions& mc) {
    if (mc.samples == 0) throw ContractError("monte carlo: at least one sample is required");
}

bool is_deterministic(const ModelParams& params) { return params.lambda == 0.0; }

model::DisorderSample box_sample(const ModelParams& params, const geometry::LatticeBox& region, std::uint64_t seed,
                                 std::size_t index) {
    return model::sample_disorder(params, region, seed, index);
}

std::size_t count_events(const std::vector<SampleRecord>& records) {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.event; }));
}

double box_volume_factor(const ModelParams& params, const ParticleRectangle& box) {
    return std::pow(box.max_side(), params.n * params.d);
}

}  // namespace

std::vector<double> energy_grid(const EnergySpec& spec, const std::vector<const Eigen::VectorXd*>& spectra) {
    if (!(spec.lo <= spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
        throw ContractError("energy grid: need finite lo <= hi");
    if (spec.single()) return {spec.lo};
    if (spec.points < 2) throw ContractError("energy grid: an interval needs at least two points");
    const int n = spec.points;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) grid[k] = spec.lo + (spec.hi - spec.lo) * k / (n - 1);
    grid.back() = spec.hi;
    if (!spec.refine || spectra.empty()) return grid;

    const auto f = [&](double E) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto* s : spectra) best = std::min(best, model::spectral_distance(*s, E));
        return best;
    };
    std::vector<double> fv(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) fv[k] = f(grid[k]);
    std::vector<double> out = grid;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const bool left_ok = k == 0 || fv[k] <= fv[k - 1];
        const bool right_ok = k + 1 == grid.size() || fv[k] <= fv[k + 1];
        if (!left_ok || !right_ok) continue;
        if (k > 0) out.push_back(0.5 * (grid[k - 1] + grid[k]));
        if (k + 1 < grid.size()) out.push_back(0.5 * (grid[k] + grid[k + 1]));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

geometry::LatticeBox ambient_region(const std::vector<geometry::LatticeBox>& boxes) {
    if (boxes.empty()) throw ContractError("ambient region: no boxes");
    const int d = boxes.front().d();
    std::vector<geometry::AxisRange> r(static_cast<std::size_t>(d), geometry::AxisRange{});
    bool first = true;
    for (const auto& b : boxes) {
        if (b.d() != d) throw ContractError("ambient region: dimension mismatch");
        const auto hull = b.projection_hull();
        for (int k = 0; k < d; ++k) {
            const auto& h = hull.range(k);
            if (first) {
                r[k] = h;
            } else {
                r[k].lo = std::min(r[k].lo, h.lo);
                r[k].hi = std::max(r[k].hi, h.hi);
            }
        }
        first = false;
    }
    return geometry::LatticeBox(1, d, std::move(r));
}

double sorted_sequence_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        best = std::min(best, std::abs(a[i] - b[j]));
        if (a[i] < b[j]) ++i; else ++j;
    }
    return best;
}

BadProbResult estimate_bad_prob(const ModelParams& params, const ParticleRectangle& box, const EnergySpec& energy,
                                const QualitySpec& quality, const McOptions& mc) {
    if (mc.samples < 100) throw ContractError("bad probability: at least 100 samples are required");
    params.validate();
    const auto region = geometry::LatticeBox::of(box).projection_hull();
    const double side = box.min_side();
    const std::function<SampleRecord(std::size_t)> one = [&](std::size_t i) {
        const auto sample = box_sample(params, region, mc.seed, i);
        const auto op = model::assemble(box, sample, params);
        const auto spectrum = model::compute_spectrum(op, true);
        const auto grid = energy_grid(energy, {&spectrum.values});
        SampleRecord rec{i, mc.seed, false, {}};
        double fail_at = kNaN;
        double worst_score = -std::numeric_limits<double>::infinity();
        for (double E : grid) {
            const auto report = resolvent::classify(resolvent::snapshot(op, spectrum, E, side), quality);
            if (report.has_pair) worst_score = std::max(worst_score, report.score);
            if (!report.verdict) {
                rec.event = true;
                fail_at = E;
                break;
            }
        }
        rec.values = {{"failure_energy", fail_at},
                      {"max_score", worst_score},
                      {"spectral_distance", model::spectral_distance(spectrum.values, energy.lo)},
                      {"grid_points", static_cast<double>(grid.size())}};
        return rec;
    };
    BadProbResult out;
    out.records = parallel_map(mc.samples, mc.workers, one);
    out.estimate = make_estimate(count_events(out.records), mc.samples, mc.seed, is_deterministic(params));
    return out;
}

WegnerResult wegner_trace_check(const ModelParams& params, const ParticleRectangle& box, double lo, double hi,
                                const McOptions& mc) {
    require_samples(mc);
    params.validate();
    if (!(lo <= hi)) throw ContractError("wegner: need lo <= hi");
    const auto region = geometry::LatticeBox::of(box).projection_hull();
    const std::function<SampleRecord(std::size_t)> one = [&](std::size_t i) {
        const auto op = model::assemble(box, box_sample(params, region, mc.seed, i), params);
        const auto spectrum = model::compute_spectrum(op, false);
        const auto& v = spectrum.values;
        const auto count = std::count_if(v.data(), v.data() + v.size(), [&](double e) { return lo <= e && e <= hi; });
        return SampleRecord{i, mc.seed, count > 0, {{"trace", static_cast<double>(count)}}};
    };
    WegnerResult out;
    out.records = parallel_map(mc.samples, mc.workers, one);
    std::vector<double> traces;
    traces.reserve(out.records.size());
    for (const auto& r : out.records) traces.push_back(r.values.front().second);
    out.mean = estimate_mean(traces);
    out.bound = params.n * params.effective_density_sup() * (hi - lo) * box_volume_factor(params, box);
    out.verdict = out.mean.upper99_one_sided <= out.bound;
    return out;
}

BoundedProbResult resolvent_norm_prob(const ModelParams& params, const ParticleRectangle& box, double E, double eps,
                                      const McOptions& mc) {
    require_samples(mc);
    params.validate();
    if (!(eps >= 0.0)) throw ContractError("resolvent norm: eps must be nonnegative");
    const auto region = geometry::LatticeBox::of(box).projection_hull();
    const std::function<SampleRecord(std::size_t)> one = [&](std::size_t i) {
        const auto op = model::assemble(box, box_sample(params, region, mc.seed, i), params);
        const double dist = model::spectral_distance(model::compute_spectrum(op, false).values, E);
        return SampleRecord{i, mc.seed, dist <= eps, {{"spectral_distance", dist}}};
    };
    BoundedProbResult out;
    out.records = parallel_map(mc.samples, mc.workers, one);
    out.estimate = make_estimate(count_events(out.records), mc.samples, mc.seed, is_deterministic(params));
    out.bound = 2.0 * params.n * params.effective_density_sup() * eps * box_volume_factor(params, box);
    out.verdict = out.estimate.upper99_one_sided <= out.bound;
    return out;
}

BoundedProbResult two_box_spectral_distance_prob(const ModelParams& params, const ParticleRectangle& first,
                                                 const ParticleRectangle& second, double eps, const McOptions& mc,
                                                 bool independent_fields) {
    require_samples(mc);
    params.validate();
    if (!(eps >= 0.0)) throw ContractError("two-box distance: eps must be nonnegative");
    if (!geometry::partially_separated(first, second))
        throw ContractError("two-box distance: rectangles are not partially separated");
    const auto b1 = geometry::LatticeBox::of(first);
    const auto b2 = geometry::LatticeBox::of(second);
    const auto region = ambient_region({b1, b2});
    const std::uint64_t second_seed = independent_fields ? model::mix64(mc.seed ^ kOracleStream) : mc.seed;
    const std::function<SampleRecord(std::size_t)> one = [&](std::size_t i) {
        const auto s1 = box_sample(params, region, mc.seed, i);
        const auto op1 = model::assemble(first, s1, params);
        const auto op2 = independent_fields ? model::assemble(second, box_sample(params, region, second_seed, i), params)
                                            : model::assemble(second, s1, params);
        const double dist = sorted_sequence_distance(model::compute_spectrum(op1, false).values,
                                                     model::compute_spectrum(op2, false).values);
        return SampleRecord{i, mc.seed, dist <= eps, {{"spectral_distance", dist}}};
    };
    BoundedProbResult out;
    out.records = parallel_map(mc.samples, mc.workers, one);
    out.estimate = make_estimate(count_events(out.records), mc.samples, mc.seed, is_deterministic(params));
    const double L = std::max(first.max_side(), second.max_side());
    out.bound = 2.0 * params.n * params.effective_density_sup() * eps * std::pow(L, 2 * params.n * params.d);
    out.verdict = out.estimate.upper99_one_sided <= out.bound;
    return out;
}

IntervalEventResult two_box_interval_event_prob(const ModelParams& params, const geometry::RealCenter& x,
                                                const geometry::RealCenter& y, double L, double m,
                                                const EnergySpec& energy, const McOptions& mc) {
    require_samples(mc);
    params.validate();
    if (geometry::hausdorff(x, y) < L)
        throw ContractError("interval event: centers must be at Hausdorff distance at least L");
    const auto r1 = ParticleRectangle::cube(x, L);
    const auto r2 = ParticleRectangle::cube(y, L);
    const auto region = ambient_region({geometry::LatticeBox::of(r1), geometry::LatticeBox::of(r2)});
    const auto spec = QualitySpec::regular(m);
    const std::function<SampleRecord(std::size_t)> one = [&](std::size_t i) {
        const auto sample = box_sample(params, region, mc.seed, i);
        const auto op1 = model::assemble(r1, sample, params);
        const auto op2 = model::assemble(r2, sample, params);
        const auto sp1 = model::compute_spectrum(op1, true);
        const auto sp2 = model::compute_spectrum(op2, true);
        const auto grid = energy_grid(energy, {&sp1.values, &sp2.values});
        SampleRecord rec{i, mc.seed, false, {}};
        double fail_at = kNaN;
        for (double E : grid) {
            if (resolvent::classify(resolvent::snapshot(op1, sp1, E, L), spec).verdict) continue;
            if (resolvent::classify(resolvent::snapshot(op2, sp2, E, L), spec).verdict) continue;
            rec.event = true;
            fail_at = E;
            break;
        }
        rec.values = {{"failure_energy", fail_at}, {"grid_points", static_cast<double>(grid.size())}};
        return rec;
    };
    IntervalEventResult out;
    out.records = parallel_map(mc.samples, mc.workers, one);
    out.estimate = make_estimate(count_events(out.records), mc.samples, mc.seed, is_deterministic(params));
    std::ostringstream note;
    if (energy.single()) {
        note << "single energy " << energy.lo;
    } else {
        note << energy.points << "-point uniform grid on [" << energy.lo << ", " << energy.hi << "]";
        if (energy.refine) note << " plus midpoints beside local minima of the distance to either spectrum";
        note << "; the event is only tested on the grid";
    }
    out.grid_note = note.str();
    return out;
}

}  // namespace mpa::stochastic
