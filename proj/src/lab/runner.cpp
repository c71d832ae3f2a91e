#include "mpa/lab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "mpa/format.hpp"
#include "mpa/geometry/bad_region.hpp"
#include "mpa/localization/diagnostics.hpp"
#include "mpa/model/hamiltonian.hpp"
#include "mpa/stochastic/parallel.hpp"

namespace mpa::lab {

namespace {

using stochastic::McOptions;
using stochastic::SampleRecord;

std::string cell(double v) { return format_double(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
template <class T>
json nullable(const std::optional<T>& v) { return v ? json(*v) : json(nullptr); }

json estimate_json(const stochastic::ProbEstimate& e) {
    return {{"point", e.point},           {"lower95", e.lower95}, {"upper95", e.upper95},
            {"lower99", e.lower99},       {"upper99", e.upper99}, {"upper99_one_sided", e.upper99_one_sided},
            {"successes", e.successes},   {"samples", e.samples}, {"seed", e.seed},
            {"deterministic", e.deterministic}};
}

json record_json(const SampleRecord& r) {
    json j = {{"sample_index", r.sample_index}, {"seed", r.seed}, {"event", r.event}};
    for (const auto& [k, v] : r.values) j[k] = nullable(v);
    return j;
}

json box_json(const geometry::ParticleRectangle& r) { return {{"center", r.center.x}, {"sides", r.sides}}; }

json constraints_json(const std::vector<stochastic::Constraint>& cs) {
    json out = json::array();
    for (const auto& c : cs) out.push_back({{"name", c.name}, {"lhs", nullable(c.lhs)}, {"rhs", nullable(c.rhs)}, {"holds", c.holds()}});
    return out;
}

void add_records(ExperimentOutput& out, const std::vector<SampleRecord>& records) {
    Table t{"samples", {"sample_index", "seed", "event"}, {}};
    if (!records.empty())
        for (const auto& [k, _] : records.front().values) t.header.push_back(k);
    for (const auto& r : records) {
        out.records.push_back(record_json(r));
        std::vector<std::string> row = {std::to_string(r.sample_index), std::to_string(r.seed), cell(r.event)};
        for (const auto& [_, v] : r.values) row.push_back(cell(v));
        t.rows.push_back(std::move(row));
    }
    out.tables.push_back(std::move(t));
}

json base_summary(const ExperimentConfig& cfg) {
    json s = {{"kind", to_string(cfg.kind)}, {"seed", cfg.seed}, {"code_version", code_version()}};
    if (cfg.samples) s["samples"] = cfg.samples;
    return s;
}

json model_json(const model::ModelParams& m) {
    return {{"n", m.n},
            {"d", m.d},
            {"lambda", m.lambda},
            {"density", {{"family", m.density.name()}, {"lo", m.density.lo}, {"hi", m.density.hi}}},
            {"effective_density_sup", m.effective_density_sup()},
            {"interaction_range", m.interaction.r0()},
            {"diagonal_shift", m.diagonal_shift}};
}

McOptions mc_of(const ExperimentConfig& cfg, int workers) { return {cfg.samples, cfg.seed, workers}; }

model::DisorderSample sample_for(const ExperimentConfig& cfg, const geometry::ParticleRectangle& box, std::size_t i) {
    return model::sample_disorder(cfg.model, geometry::LatticeBox::of(box).projection_hull(), cfg.seed, i);
}

void require_dense(const geometry::ParticleRectangle& box) {
    const auto size = geometry::LatticeBox::of(box).size();
    if (size > model::kDenseCap)
        throw CapExceeded("box has " + std::to_string(size) + " sites; the dense cap is " + std::to_string(model::kDenseCap));
}

// ---------------------------------------------------------------- stochastic kinds

ExperimentOutput run_wegner(const ExperimentConfig& cfg, const WegnerConfig& w, int workers) {
    require_dense(w.box);
    ExperimentOutput out;
    out.summary = base_summary(cfg);
    out.summary["model"] = model_json(cfg.model);
    out.summary["box"] = box_json(w.box);
    out.summary["estimator"] = w.estimator;
    if (w.estimator == "trace") {
        const auto r = stochastic::wegner_trace_check(cfg.model, w.box, w.lo, w.hi, mc_of(cfg, workers));
        out.summary["interval"] = {w.lo, w.hi};
        out.summary["mean_trace"] = r.mean.mean;
        out.summary["stddev"] = r.mean.stddev;
        out.summary["upper99_one_sided"] = r.mean.upper99_one_sided;
        out.summary["upper_bound_formula"] = "mean + 2.3263 * stddev / sqrt(samples)";
        out.summary["bound"] = r.bound;
        out.summary["bound_formula"] = "n * ||rho||_inf / lambda * |I| * L^(n d), L = largest side";
        out.summary["verdict"] = r.verdict;
        add_records(out, r.records);
    } else {
        const auto r = stochastic::resolvent_norm_prob(cfg.model, w.box, w.E, w.eps, mc_of(cfg, workers));
        out.summary["E"] = w.E;
        out.summary["eps"] = w.eps;
        out.summary["estimate"] = estimate_json(r.estimate);
        out.summary["bound"] = r.bound;
        out.summary["bound_formula"] = "2 n ||rho||_inf / lambda * eps * L^(n d), L = largest side";
        out.summary["verdict"] = r.verdict;
        add_records(out, r.records);
    }
    return out;
}

json energy_json(const stochastic::EnergySpec& e) {
    if (e.single()) return {{"E", e.lo}};
    return {{"interval", {e.lo, e.hi}}, {"points", e.points}, {"refine", e.refine}};
}

ExperimentOutput run_box_quality(const ExperimentConfig& cfg, const BoxQualityConfig& b, int workers) {
    require_dense(b.box);
    const auto r = stochastic::estimate_bad_prob(cfg.model, b.box, b.energy, b.quality, mc_of(cfg, workers));
    ExperimentOutput out;
    out.summary = base_summary(cfg);
    out.summary["model"] = model_json(cfg.model);
    out.summary["box"] = box_json(b.box);
    out.summary["energy"] = energy_json(b.energy);
    out.summary["quality"] = {{"kind", resolvent::to_string(b.quality.kind)}, {"parameter", b.quality.parameter},
                              {"beta", b.quality.beta}};
    out.summary["event"] = "box fails the quality at the energy (or at some grid energy)";
    out.summary["estimate"] = estimate_json(r.estimate);
    add_records(out, r.records);
    return out;
}

ExperimentOutput run_two_box(const ExperimentConfig& cfg, const TwoBoxConfig& t, int workers) {
    require_dense(t.first);
    require_dense(t.second);
    const auto r = stochastic::two_box_spectral_distance_prob(cfg.model, t.first, t.second, t.eps, mc_of(cfg, workers),
                                                              t.independent_fields);
    ExperimentOutput out;
    out.summary = base_summary(cfg);
    out.summary["model"] = model_json(cfg.model);
    out.summary["first"] = box_json(t.first);
    out.summary["second"] = box_json(t.second);
    out.summary["eps"] = t.eps;
    out.summary["independent_fields"] = t.independent_fields;
    out.summary["estimate"] = estimate_json(r.estimate);
    out.summary["bound"] = r.bound;
    out.summary["bound_formula"] = "2 n ||rho||_inf / lambda * eps * L^(2 n d), L = largest side of both";
    out.summary["verdict"] = r.verdict;
    add_records(out, r.records);
    return out;
}

ExperimentOutput run_interval_event(const ExperimentConfig& cfg, const IntervalEventConfig& c, int workers) {
    require_dense(geometry::ParticleRectangle::cube(c.x, c.L));
    const auto r = stochastic::two_box_interval_event_prob(cfg.model, c.x, c.y, c.L, c.m, c.energy, mc_of(cfg, workers));
    ExperimentOutput out;
    out.summary = base_summary(cfg);
    out.summary["model"] = model_json(cfg.model);
    out.summary["x"] = c.x.x;
    out.summary["y"] = c.y.x;
    out.summary["L"] = c.L;
    out.summary["m"] = c.m;
    out.summary["energy"] = energy_json(c.energy);
    out.summary["grid"] = r.grid_note;
    out.summary["event"] = "both cubes (m, E)-nonregular at a common grid energy";
    out.summary["estimate"] = estimate_json(r.estimate);
    add_records(out, r.records);
    return out;
}

// ---------------------------------------------------------------- deterministic checks on samples

struct CheckOutcome {
    bool hypotheses = false;
    bool conclusion = false;
    std::vector<std::pair<std::string, double>> values;
};

CheckOutcome msa_instance(const ExperimentConfig& cfg, const MsaCheckConfig& c, std::size_t i) {
    CheckOutcome o;
    if (c.check == "msa") {
        const auto cube = geometry::ParticleRectangle::cube(c.center, c.L);
        const auto r = resolvent::msa_deterministic_check(c.center, c.L, c.ell, sample_for(cfg, cube, i), cfg.model, c.E, c.msa);
        o.hypotheses = r.hypotheses();
        o.conclusion = r.conclusion.verdict;
        o.values = {{"parent_nonresonant", r.parent_nonresonant},
                    {"subboxes_nonresonant", r.subboxes_nonresonant},
                    {"bad_cover_boxes", static_cast<double>(r.bad_cover_boxes)},
                    {"distant_bad", static_cast<double>(r.distant_bad)},
                    {"target", r.target},
                    {"achieved", r.achieved},
                    {"score", r.conclusion.score}};
    } else if (c.check == "pi-transfer") {
        const auto r = resolvent::pi_transfer_check(c.box, sample_for(cfg, c.box, i), cfg.model, c.E, c.transfer);
        o.hypotheses = r.hypotheses();
        o.conclusion = r.conclusion.verdict;
        o.values = {{"kronecker_mismatch", r.kronecker_mismatch},
                    {"gj_excess", r.gj_excess},
                    {"gjc_excess", r.gjc_excess},
                    {"pairs_checked", static_cast<double>(r.pairs_checked)},
                    {"target", r.target},
                    {"score", r.conclusion.score}};
    } else if (c.check == "energy-shift") {
        const auto op = model::assemble(c.box, sample_for(cfg, c.box, i), cfg.model);
        const auto sp = model::compute_spectrum(op, true);
        const auto r = resolvent::energy_shift_check(op, sp, c.box.min_side(), c.E, c.m, c.beta, c.points);
        o.hypotheses = r.preconditions();
        o.conclusion = r.all_good();
        o.values = {{"eta", r.eta}, {"target_mass", r.target_mass},
                    {"good_points", static_cast<double>(std::count(r.good.begin(), r.good.end(), true))},
                    {"grid_points", static_cast<double>(r.grid.size())}};
    } else if (c.check == "implications") {
        const auto op = model::assemble(c.box, sample_for(cfg, c.box, i), cfg.model);
        const auto sp = model::compute_spectrum(op, true);
        const auto snap = resolvent::snapshot(op, sp, c.E, c.box.min_side());
        const auto imps = resolvent::quality_implications(snap, c.m, c.theta, c.zeta);
        o.hypotheses = true;
        o.conclusion = std::all_of(imps.begin(), imps.end(), [](const auto& im) { return im.holds(); });
        const char* names[] = {"regular_to_suitable", "suitable_to_regular", "regular_to_ses", "ses_to_regular"};
        for (std::size_t k = 0; k < imps.size(); ++k) {
            o.values.push_back({std::string(names[k]) + "_premise", imps[k].premise});
            o.values.push_back({std::string(names[k]) + "_conclusion", imps[k].conclusion});
        }
    } else {
        const auto r = resolvent::preregular_and_hnr_check(c.box, sample_for(cfg, c.box, i), cfg.model, c.E, c.ell, c.preregular);
        o.hypotheses = r.preregular() && r.hnr() && r.has_conclusion;
        o.conclusion = r.has_conclusion && r.conclusion.verdict;
        o.values = {{"lregular", r.lregular}, {"rregular", r.rregular}, {"lnr", r.lnr}, {"rnr", r.rnr},
                    {"nonresonant", r.nonresonant}, {"mass", r.mass}};
    }
    return o;
}

ExperimentOutput run_msa_check(const ExperimentConfig& cfg, const MsaCheckConfig& c, int workers) {
    require_dense(c.check == "msa" ? geometry::ParticleRectangle::cube(c.center, c.L) : c.box);
    const std::function<SampleRecord(std::size_t)> one = [&](std::size_t i) {
        auto o = msa_instance(cfg, c, i);
        SampleRecord r{i, cfg.seed, o.hypotheses && !o.conclusion, {}};
        r.values = {{"hypotheses", o.hypotheses}, {"conclusion", o.conclusion}};
        r.values.insert(r.values.end(), o.values.begin(), o.values.end());
        return r;
    };
    const auto records = stochastic::parallel_map(cfg.samples, workers, one);
    std::size_t held = 0, concluded = 0, counter = 0;
    for (const auto& r : records) {
        const bool h = r.values[0].second != 0.0, k = r.values[1].second != 0.0;
        held += h;
        concluded += h && k;
        counter += r.event;
    }
    ExperimentOutput out;
    out.summary = base_summary(cfg);
    out.summary["model"] = model_json(cfg.model);
    out.summary["check"] = c.check;
    out.summary["E"] = c.E;
    out.summary["instances"] = records.size();
    out.summary["hypotheses_held"] = held;
    out.summary["conclusion_held_given_hypotheses"] = concluded;
    out.summary["counterexamples"] = counter;
    out.summary["verdict"] = counter == 0;
    add_records(out, records);
    return out;
}

// ---------------------------------------------------------------- recursion

ExperimentOutput run_recursion(const ExperimentConfig& cfg, const RecursionConfig& r) {
    ExperimentOutput out;
    out.summary = base_summary(cfg);
    out.summary["stage"] = r.stage;
    Table t{"sequence", {}, {}};
    if (r.stage == "msa1") {
        const auto res = stochastic::recursion_msa1(r.msa1);
        const auto& P = r.msa1;
        out.summary["parameters"] = {{"p0", P.p0}, {"Y", P.Y}, {"N", P.N}, {"d", P.d}, {"p", P.p}, {"J", P.J}, {"L0", P.L0}};
        out.summary["K0"] = nullable(res.K0);
        out.summary["K0_rule"] = "first k with (2C)^(((J+1)^k-1)/J) p0^((J+1)^k) <= L_k^(-p), C = (2Y)^(Nd), L_k = Y^k L0";
        out.summary["literal_K"] = nullable(res.literal_K);
        out.summary["literal_diverged"] = res.literal_diverged;
        out.summary["closure_scale"] = res.closure_scale;
        out.summary["closure_scale_formula"] = "(2 C^(J+1) Y^p)^(1/(p J))";
        out.summary["closure_holds"] = res.closure_holds;
        out.summary["bound_monotone"] = res.bound_monotone;
        out.summary["preconditions_hold"] = res.preconditions_hold();
        out.summary["preconditions"] = constraints_json(res.preconditions);
        t.header = {"k", "L", "log_threshold", "log_bound", "log_literal"};
        for (std::size_t k = 0; k < res.L.size(); ++k) {
            const double lit = k < res.log_literal.size() ? res.log_literal[k] : NAN;
            out.records.push_back({{"k", k}, {"L", res.L[k]}, {"log_threshold", res.log_threshold[k]},
                                   {"log_bound", nullable(res.log_bound[k])}, {"log_literal", nullable(lit)}});
            t.rows.push_back({cell(k), cell(res.L[k]), cell(res.log_threshold[k]), cell(res.log_bound[k]), cell(lit)});
        }
        if (res.K0) {
            json closure = json::array();
            for (double q : res.log_closure) closure.push_back(q);
            out.summary["log_closure_from_K0"] = closure;
        }
    } else if (r.stage == "msa2") {
        const auto res = stochastic::recursion_msa2(r.msa2);
        const auto& P = r.msa2;
        out.summary["parameters"] = {{"L0", P.L0}, {"m0", P.m0}, {"gamma", P.gamma}, {"kappa", P.kappa}, {"p", P.p},
                                     {"N", P.N}, {"d", P.d}, {"beta", nullable(P.beta)}};
        out.summary["halfmass_sum"] = res.halfmass_sum;
        out.summary["halfmass_formula"] = "1/2 sum_{j>=1} L0^(-kappa gamma^(j-1)), terms down to 1e-30";
        out.summary["sum_condition"] = res.sum_condition;
        out.summary["min_mass"] = res.min_mass;
        out.summary["mass_above_half"] = res.mass_above_half;
        out.summary["valid"] = res.valid();
        out.summary["constraints"] = constraints_json(res.constraints);
        t.header = {"k", "log_L", "mass"};
        for (std::size_t k = 0; k < res.mass.size(); ++k) {
            out.records.push_back({{"k", k}, {"log_L", res.log_L[k]}, {"mass", res.mass[k]}});
            t.rows.push_back({cell(k), cell(res.log_L[k]), cell(res.mass[k])});
        }
    } else if (r.stage == "msa3") {
        const auto res = stochastic::recursion_msa3(r.msa3);
        const auto& P = r.msa3;
        out.summary["parameters"] = {{"log_p0", nullable(P.log_p0)}, {"Y", P.Y}, {"zeta0", P.zeta0}, {"zeta1", P.zeta1},
                                     {"N", P.N}, {"d", P.d}, {"L0", P.L0}};
        out.summary["J"] = res.J;
        out.summary["c"] = res.c;
        out.summary["K1"] = nullable(res.K1);
        out.summary["K1_rule"] = "first k with -log bound >= L_k^zeta1, compared as log(-log)";
        out.summary["preconditions_hold"] = res.preconditions_hold();
        out.summary["preconditions"] = constraints_json(res.preconditions);
        t.header = {"k", "loglog_bound", "loglog_threshold"};
        for (std::size_t k = 0; k < res.loglog_bound.size(); ++k) {
            out.records.push_back({{"k", k}, {"loglog_bound", nullable(res.loglog_bound[k])},
                                   {"loglog_threshold", res.loglog_threshold[k]}});
            t.rows.push_back({cell(k), cell(res.loglog_bound[k]), cell(res.loglog_threshold[k])});
        }
    } else if (r.stage == "msa4") {
        out.summary["parameters"] = {{"beta", r.beta}, {"zeta2", r.zeta2}, {"gamma", r.gamma}};
        out.summary["J_rule"] = "even J in (x, x + 2], x = 2 L^(beta - zeta2/gamma)";
        t.header = {"L", "x", "J"};
        for (double L : r.msa4_L) {
            const double x = 2.0 * std::pow(L, r.beta - r.zeta2 / r.gamma);
            const auto J = stochastic::msa4_J(L, r.beta, r.zeta2, r.gamma);
            out.records.push_back({{"L", L}, {"x", x}, {"J", J}});
            t.rows.push_back({cell(L), cell(x), std::to_string(J)});
        }
    }
    if (r.chain) {
        const auto rep = stochastic::validate_exponent_chain(*r.chain);
        out.summary["chain"] = {{"checked", constraints_json(rep.checked)},
                                {"violations", constraints_json(rep.violations)},
                                {"notes", rep.notes},
                                {"valid", rep.violations.empty()}};
    }
    if (!t.header.empty()) out.tables.push_back(std::move(t));
    return out;
}

// ---------------------------------------------------------------- localization

struct LocalizationSample {
    std::vector<double> slopes;
    double kernel_near = NAN, kernel_far = NAN, kernel_ratio = NAN;
    std::size_t sudec_checked = 0, sudec_violations = 0, amplitude_violations = 0, degenerate = 0;
    double parseval = 0.0, max_amplitude_excess = -INFINITY;
    std::vector<std::vector<std::string>> decay_rows, bin_rows, kernel_rows, sudec_rows;
};

LocalizationSample localization_instance(const ExperimentConfig& cfg, const LocalizationConfig& c, std::size_t i) {
    LocalizationSample s;
    const auto op = model::assemble(c.box, sample_for(cfg, c.box, i), cfg.model);
    const auto sp = model::compute_spectrum(op, true);
    const auto idx = std::to_string(i);
    s.parseval = localization::parseval_defect(sp);

    const auto profiles = localization::decay_profiles(op, sp);
    for (const auto& p : profiles) {
        s.slopes.push_back(p.slope);
        s.decay_rows.push_back({idx, cell(p.index), cell(p.eigenvalue), cell(p.center), cell(p.slope), cell(p.intercept),
                                cell(p.fitted)});
        std::map<double, std::pair<std::size_t, double>> bins;
        for (const auto& pt : p.points) {
            auto& b = bins[pt.distance];
            ++b.first;
            b.second += pt.log_abs;
        }
        for (const auto& [dist, b] : bins)
            s.bin_rows.push_back({idx, cell(p.index), cell(dist), cell(b.first), cell(b.second / static_cast<double>(b.first))});
    }

    for (const auto& b : localization::kernel_by_distance(op, sp, c.lo, c.hi)) {
        s.kernel_rows.push_back({idx, cell(b.distance), cell(b.pairs), cell(b.median), cell(b.mean)});
        if (b.distance == c.near_distance) s.kernel_near = b.median;
        if (b.distance == c.far_distance) s.kernel_far = b.median;
    }
    if (std::isfinite(s.kernel_near) && std::isfinite(s.kernel_far) && s.kernel_near > 0.0)
        s.kernel_ratio = s.kernel_far / s.kernel_near;

    if (c.amplitude_pairs > 0) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        const std::size_t D = op.dim();
        for (int k = 0; k < c.amplitude_pairs; ++k) {
            const std::size_t x = static_cast<std::size_t>(k) * D / static_cast<std::size_t>(c.amplitude_pairs);
            pairs.push_back({x, (x * 7 + 3) % D});
        }
        const auto ke = localization::kernel_estimate(op, sp, c.lo, c.hi, pairs, c.times);
        for (const auto& e : ke.entries) {
            s.max_amplitude_excess = std::max(s.max_amplitude_excess, e.max_amplitude - e.correlator);
            if (e.max_amplitude > e.correlator + 1e-9) ++s.amplitude_violations;
        }
    }

    for (const auto& cl : localization::spectral_clusters(sp)) {
        if (cl.size() > 1) ++s.degenerate;
        for (std::size_t a = 0; a < op.dim(); ++a) {
            const auto v = localization::sudec_values(op, sp, cl, a);
            ++s.sudec_checked;
            if (!(v.Z >= 0.0 && v.Z <= v.W + 1e-10 && v.W <= 1.0 + 1e-10)) ++s.sudec_violations;
        }
        const auto at = profiles[cl.front()].center;
        const auto v = localization::sudec_values(op, sp, cl, at);
        s.sudec_rows.push_back({idx, cell(cl.front()), cell(v.eigenvalue), cell(v.multiplicity), cell(at), cell(v.Z), cell(v.W)});
    }
    return s;
}

double median(std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }), v.end());
    if (v.empty()) return NAN;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

ExperimentOutput run_localization(const ExperimentConfig& cfg, const LocalizationConfig& c, int workers) {
    require_dense(c.box);
    const std::function<LocalizationSample(std::size_t)> one = [&](std::size_t i) { return localization_instance(cfg, c, i); };
    const auto samples = stochastic::parallel_map(cfg.samples, workers, one);

    ExperimentOutput out;
    Table decay{"decay_fits", {"sample_index", "eigen_index", "eigenvalue", "center", "slope", "intercept", "fitted_points"}, {}};
    Table bins{"decay_profiles", {"sample_index", "eigen_index", "distance", "points", "mean_log_abs"}, {}};
    Table kernel{"kernel", {"sample_index", "distance", "pairs", "median_q", "mean_q"}, {}};
    Table sudec{"sudec", {"sample_index", "first_eigen_index", "eigenvalue", "multiplicity", "center", "Z", "W"}, {}};
    std::vector<double> slopes, ratios;
    std::size_t checked = 0, violations = 0, amp_viol = 0;
    double parseval = 0.0, excess = -INFINITY;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        slopes.insert(slopes.end(), s.slopes.begin(), s.slopes.end());
        ratios.push_back(s.kernel_ratio);
        checked += s.sudec_checked;
        violations += s.sudec_violations;
        amp_viol += s.amplitude_violations;
        parseval = std::max(parseval, s.parseval);
        excess = std::max(excess, s.max_amplitude_excess);
        out.records.push_back({{"sample_index", i}, {"seed", cfg.seed}, {"median_slope", nullable(median(s.slopes))},
                               {"kernel_near", nullable(s.kernel_near)}, {"kernel_far", nullable(s.kernel_far)},
                               {"kernel_ratio", nullable(s.kernel_ratio)}, {"sudec_checked", s.sudec_checked},
                               {"sudec_violations", s.sudec_violations}, {"degenerate_clusters", s.degenerate},
                               {"amplitude_violations", s.amplitude_violations},
                               {"max_amplitude_excess", nullable(s.max_amplitude_excess)},
                               {"parseval_defect", s.parseval}});
        decay.rows.insert(decay.rows.end(), s.decay_rows.begin(), s.decay_rows.end());
        bins.rows.insert(bins.rows.end(), s.bin_rows.begin(), s.bin_rows.end());
        kernel.rows.insert(kernel.rows.end(), s.kernel_rows.begin(), s.kernel_rows.end());
        sudec.rows.insert(sudec.rows.end(), s.sudec_rows.begin(), s.sudec_rows.end());
    }
    out.summary = base_summary(cfg);
    out.summary["model"] = model_json(cfg.model);
    out.summary["box"] = box_json(c.box);
    out.summary["kernel_interval"] = {nullable(c.lo), nullable(c.hi)};
    out.summary["median_slope"] = nullable(median(slopes));
    out.summary["median_slope_rule"] = "median over every eigenvector of every sample of the fitted decay rate";
    out.summary["near_distance"] = c.near_distance;
    out.summary["far_distance"] = c.far_distance;
    out.summary["median_kernel_ratio"] = nullable(median(ratios));
    out.summary["kernel_ratio_rule"] = "per sample: median Q at far distance / median Q at near distance; median over samples";
    out.summary["sudec_checked"] = checked;
    out.summary["sudec_violations"] = violations;
    out.summary["amplitude_pairs_per_sample"] = c.amplitude_pairs;
    out.summary["time_samples"] = c.times.size();
    out.summary["amplitude_violations"] = amp_viol;
    out.summary["max_amplitude_excess"] = nullable(excess);
    out.summary["max_parseval_defect"] = parseval;
    out.tables = {std::move(decay), std::move(bins), std::move(kernel), std::move(sudec)};
    return out;
}

// ---------------------------------------------------------------- cover self-test

ExperimentOutput run_cover(const ExperimentConfig& cfg, const CoverSelftestConfig& c) {
    ExperimentOutput out;
    Table covers{"cover_checks",
                 {"ell", "L", "alpha", "k", "count", "union_equals_parent", "covering", "core_disjoint", "count_bounds",
                  "count_formula", "nesting", "pass"},
                 {}};
    std::size_t cases = 0, passed = 0, no_alpha = 0;
    std::vector<double> alphas;
    const geometry::RealCenter origin(c.n, c.d, std::vector<double>(static_cast<std::size_t>(c.n * c.d), 0.0));
    for (int ell : c.ells) {
        for (int q : c.ratios) {
            const double L = static_cast<double>(ell) * q;
            if (!geometry::select_alpha(L, ell)) {
                ++no_alpha;
                out.records.push_back({{"type", "cover"}, {"ell", ell}, {"L", L}, {"alpha", nullptr}});
                continue;
            }
            const geometry::SuitableCover cover(L, ell, origin);
            const auto chk = geometry::check_cover(cover);
            ++cases;
            passed += chk.all();
            alphas.push_back(cover.alpha());
            covers.rows.push_back({cell(ell), cell(L), cell(cover.alpha()), cell(cover.k()), cell(chk.count),
                                   cell(chk.union_equals_parent), cell(chk.covering), cell(chk.core_disjoint),
                                   cell(chk.count_bounds), cell(chk.count_formula), cell(chk.nesting), cell(chk.all())});
            out.records.push_back({{"type", "cover"}, {"ell", ell}, {"L", L}, {"alpha", cover.alpha()},
                                   {"count", chk.count}, {"pass", chk.all()}});
        }
    }

    Table mult{"multipliers", {"N", "alpha", "j", "K_j", "bound_17jN", "pass"}, {}};
    std::size_t mult_cases = 0, mult_pass = 0;
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    for (double a : {0.6, 0.8}) alphas.push_back(a);
    for (int N = 1; N <= c.multiplier_N; ++N) {
        for (double a : alphas) {
            const auto K = geometry::K_multipliers(c.multiplier_j, N, a);
            for (int j = 1; j <= c.multiplier_j; ++j) {
                const double bound = 17.0 * j * N;
                const bool ok = K[j - 1] <= bound;
                ++mult_cases;
                mult_pass += ok;
                mult.rows.push_back({cell(N), cell(a), cell(j), cell(K[j - 1]), cell(bound), cell(ok)});
            }
        }
    }

    Table bad{"bad_regions", {"set", "N", "ell", "L", "bad_centers", "members", "sum_K", "sum_K_bound", "pass"}, {}};
    std::mt19937_64 rng(cfg.seed);
    std::size_t built = 0, bad_pass = 0, overflow = 0, attempts = 0;
    const std::size_t max_attempts = static_cast<std::size_t>(c.bad_sets) * 20 + 20;
    while (built < static_cast<std::size_t>(c.bad_sets) && attempts < max_attempts) {
        ++attempts;
        const double ell = 1.0 + static_cast<double>(rng() % 2);
        const double ratio = c.n == 1 ? 30.0 + static_cast<double>(rng() % 20) : 50.0 + static_cast<double>(rng() % 30);
        const geometry::SuitableCover cover(ell * ratio, ell, origin);
        const int S = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(c.max_bad));
        std::vector<geometry::LatticeIndex> centers;
        for (int s = 0; s < S; ++s) {
            geometry::LatticeIndex a(static_cast<std::size_t>(cover.axes()));
            for (auto& v : a) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * cover.limit() + 1)) - cover.limit();
            centers.push_back(a);
        }
        geometry::BadRegion region;
        try {
            region = geometry::build_bad_region(cover, centers);
        } catch (const RegionOverflow&) {
            ++overflow;
            continue;
        }
        const auto chk = geometry::check_bad_region(cover, centers, region);
        bad_pass += chk.all();
        bad.rows.push_back({cell(built), cell(c.n), cell(ell), cell(ell * ratio), cell(static_cast<std::size_t>(S)),
                            cell(region.members.size()), cell(chk.sum_K), cell(chk.sum_K_bound), cell(chk.all())});
        out.records.push_back({{"type", "bad_region"}, {"set", built}, {"ell", ell}, {"L", ell * ratio},
                               {"bad_centers", S}, {"pass", chk.all()}});
        ++built;
    }

    out.summary = base_summary(cfg);
    out.summary["n"] = c.n;
    out.summary["d"] = c.d;
    out.summary["cover_cases"] = cases;
    out.summary["cover_passed"] = passed;
    out.summary["cover_without_alpha"] = no_alpha;
    out.summary["multiplier_cases"] = mult_cases;
    out.summary["multiplier_passed"] = mult_pass;
    out.summary["bad_region_sets"] = built;
    out.summary["bad_region_passed"] = bad_pass;
    out.summary["bad_region_overflows"] = overflow;
    out.summary["verdict"] = passed == cases && mult_pass == mult_cases && bad_pass == built &&
                             built == static_cast<std::size_t>(c.bad_sets);
    out.tables = {std::move(covers), std::move(mult), std::move(bad)};
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg, int workers) {
    return std::visit(
        [&](const auto& body) -> ExperimentOutput {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, WegnerConfig>) return run_wegner(cfg, body, workers);
            else if constexpr (std::is_same_v<T, BoxQualityConfig>) return run_box_quality(cfg, body, workers);
            else if constexpr (std::is_same_v<T, TwoBoxConfig>) return run_two_box(cfg, body, workers);
            else if constexpr (std::is_same_v<T, IntervalEventConfig>) return run_interval_event(cfg, body, workers);
            else if constexpr (std::is_same_v<T, MsaCheckConfig>) return run_msa_check(cfg, body, workers);
            else if constexpr (std::is_same_v<T, RecursionConfig>) return run_recursion(cfg, body);
            else if constexpr (std::is_same_v<T, LocalizationConfig>) return run_localization(cfg, body, workers);
            else return run_cover(cfg, body);
        },
        cfg.body);
}

}  // namespace mpa::lab
