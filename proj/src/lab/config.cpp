#include "mpa/lab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mpa/format.hpp"
#include "mpa/geometry/cover.hpp"
#include "mpa/geometry/separation.hpp"
#include "mpa/model/hamiltonian.hpp"

namespace mpa::lab {

namespace {

const std::vector<std::pair<ExperimentKind, std::string>>& kind_table() {
    static const std::vector<std::pair<ExperimentKind, std::string>> t = {
        {ExperimentKind::Wegner, "wegner"},
        {ExperimentKind::BoxQuality, "box-quality"},
        {ExperimentKind::TwoBox, "two-box"},
        {ExperimentKind::IntervalEvent, "interval-event"},
        {ExperimentKind::MsaCheck, "msa-check"},
        {ExperimentKind::Recursion, "recursion"},
        {ExperimentKind::Localization, "localization"},
        {ExperimentKind::CoverSelftest, "cover-selftest"},
    };
    return t;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

std::string fmt(double v) { return format_double(v); }

// Typed access to one JSON object; every problem lands in the report and a neutral value is returned.
class Fields {
public:
    Fields(const json* obj, std::string path, ValidationReport& rep) : obj_(obj), path_(std::move(path)), rep_(rep) {
        if (obj_ && !obj_->is_object()) {
            rep_.error(path_.empty() ? "<root>" : path_, "must be an object");
            obj_ = nullptr;
        }
    }

    bool valid() const { return obj_ != nullptr; }
    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_ && obj_->contains(key) && !(*obj_)[key].is_null();
    }

    double num(const std::string& key, std::optional<double> def = std::nullopt) {
        const json* v = get(key, !def.has_value());
        if (!v) return def.value_or(0.0);
        if (!v->is_number()) return type_error(key, "a number"), def.value_or(0.0);
        const double x = v->get<double>();
        if (!std::isfinite(x)) return rep_.error(at(key), "must be finite"), def.value_or(0.0);
        return x;
    }

    std::int64_t integer(const std::string& key, std::optional<std::int64_t> def = std::nullopt) {
        const json* v = get(key, !def.has_value());
        if (!v) return def.value_or(0);
        if (!v->is_number_integer()) return type_error(key, "an integer"), def.value_or(0);
        return v->get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(const std::string& key, std::optional<std::uint64_t> def = std::nullopt) {
        const json* v = get(key, !def.has_value());
        if (!v) return def.value_or(0);
        if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0))
            return type_error(key, "a nonnegative integer"), def.value_or(0);
        return v->get<std::uint64_t>();
    }

    bool boolean(const std::string& key, bool def) {
        const json* v = get(key, false);
        if (!v) return def;
        if (!v->is_boolean()) return type_error(key, "a boolean"), def;
        return v->get<bool>();
    }

    std::string str(const std::string& key, std::optional<std::string> def, const std::vector<std::string>& allowed) {
        const json* v = get(key, !def.has_value());
        if (!v) return def.value_or("");
        if (!v->is_string()) return type_error(key, "a string"), def.value_or("");
        auto s = v->get<std::string>();
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
            rep_.error(at(key), "must be one of: " + join(allowed));
            return def.value_or(allowed.front());
        }
        return s;
    }

    std::vector<double> nums(const std::string& key, std::optional<std::vector<double>> def = std::nullopt) {
        const json* v = get(key, !def.has_value());
        if (!v) return def.value_or(std::vector<double>{});
        if (!v->is_array()) return type_error(key, "an array of numbers"), def.value_or(std::vector<double>{});
        std::vector<double> out;
        for (const auto& e : *v) {
            if (!e.is_number()) return type_error(key, "an array of numbers"), def.value_or(std::vector<double>{});
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<int> ints(const std::string& key, std::optional<std::vector<int>> def = std::nullopt) {
        const json* v = get(key, !def.has_value());
        if (!v) return def.value_or(std::vector<int>{});
        if (!v->is_array()) return type_error(key, "an array of integers"), def.value_or(std::vector<int>{});
        std::vector<int> out;
        for (const auto& e : *v) {
            if (!e.is_number_integer()) return type_error(key, "an array of integers"), def.value_or(std::vector<int>{});
            out.push_back(e.get<int>());
        }
        return out;
    }

    Fields object(const std::string& key, bool required) {
        const json* v = get(key, required);
        return Fields(v, at(key), rep_);
    }

    const json* raw(const std::string& key) { return get(key, false); }

    // Unknown keys are reported as warnings.
    void finish() {
        if (!obj_) return;
        for (const auto& [k, _] : obj_->items())
            if (!seen_.count(k)) rep_.warn(at(k), "unknown field ignored");
    }

    ValidationReport& report() { return rep_; }

private:
    const json* get(const std::string& key, bool required) {
        seen_.insert(key);
        if (!obj_ || !obj_->contains(key) || (*obj_)[key].is_null()) {
            if (required && obj_) rep_.error(at(key), "required field is missing");
            return nullptr;
        }
        return &(*obj_)[key];
    }
    void type_error(const std::string& key, const char* what) { rep_.error(at(key), std::string("must be ") + what); }

    const json* obj_;
    std::string path_;
    ValidationReport& rep_;
    std::set<std::string> seen_;
};

void positive(ValidationReport& rep, const std::string& field, double v) {
    if (!(v > 0.0)) rep.error(field, "must be > 0 (got " + fmt(v) + ")");
}

model::ModelParams parse_model(Fields f, ValidationReport& rep) {
    const int n = static_cast<int>(f.integer("n"));
    const int d = static_cast<int>(f.integer("d"));
    if (n < 1) rep.error(f.at("n"), "must be >= 1");
    if (d < 1) rep.error(f.at("d"), "must be >= 1");
    const int nn = std::max(n, 1), dd = std::max(d, 1);
    auto p = model::default_params(nn, dd);
    p.lambda = f.num("lambda", 1.0);
    if (p.lambda < 0.0) rep.error(f.at("lambda"), "must be >= 0");
    p.diagonal_shift = f.num("diagonal_shift", 0.0);

    if (f.has("density")) {
        auto g = f.object("density", true);
        const auto fam = g.str("family", "uniform", {"uniform", "triangular"});
        const double lo = g.num("lo", 0.0), hi = g.num("hi", 1.0);
        if (!(lo < hi)) rep.error(g.at("hi"), "density support needs lo < hi");
        else p.density = fam == "uniform" ? model::Density::uniform(lo, hi) : model::Density::triangular(lo, hi);
        g.finish();
    }
    if (f.has("interaction")) {
        auto g = f.object("interaction", true);
        const auto kind = g.str("kind", "step", {"step", "none", "table"});
        if (kind == "none") {
            p.interaction = model::Interaction::none(dd);
        } else if (kind == "step") {
            const double r0 = g.num("r0", 1.0), u0 = g.num("u0", 1.0);
            if (r0 < 0.0) rep.error(g.at("r0"), "must be >= 0");
            else p.interaction = model::Interaction::step(dd, r0, u0);
        } else {
            const double r0 = g.num("r0");
            std::map<std::vector<geometry::Coord>, double> table;
            const json* entries = g.raw("entries");
            if (!entries || !entries->is_array()) {
                rep.error(g.at("entries"), "must be an array of {\"y\": [...], \"value\": v}");
            } else {
                for (std::size_t i = 0; i < entries->size(); ++i) {
                    Fields e(&(*entries)[i], g.at("entries") + "[" + std::to_string(i) + "]", rep);
                    const auto y = e.ints("y");
                    const double v = e.num("value");
                    e.finish();
                    if (static_cast<int>(y.size()) != dd) {
                        rep.error(e.at("y"), "must have d entries");
                        continue;
                    }
                    table[std::vector<geometry::Coord>(y.begin(), y.end())] = v;
                }
                if (r0 >= 0.0 && rep.ok()) {
                    try {
                        p.interaction = model::Interaction::table(dd, r0, table);
                    } catch (const ContractError& e) {
                        rep.error(g.at("entries"), e.what());
                    }
                }
            }
        }
        g.finish();
    }
    f.finish();
    return p;
}

geometry::RealCenter parse_center(Fields& f, const std::string& key, int n, int d, ValidationReport& rep) {
    const auto c = f.nums(key);
    if (static_cast<int>(c.size()) != n * d) {
        rep.error(f.at(key), "needs n*d = " + std::to_string(n * d) + " coordinates");
        return geometry::RealCenter(n, d);
    }
    return geometry::RealCenter(n, d, c);
}

void check_dense_cap(const geometry::ParticleRectangle& r, const std::string& field, ValidationReport& rep) {
    const auto size = geometry::LatticeBox::of(r).size();
    if (size > model::kDenseCap)
        rep.warn(field, "box has " + std::to_string(size) + " sites, above the dense eigensolver cap " +
                            std::to_string(model::kDenseCap) + "; the run will stop with exit code 3");
}

geometry::ParticleRectangle parse_box(Fields f, int n, int d, ValidationReport& rep) {
    const auto c = parse_center(f, "center", n, d, rep);
    std::vector<double> sides;
    if (f.has("sides")) {
        sides = f.nums("sides");
        if (static_cast<int>(sides.size()) != n) rep.error(f.at("sides"), "needs one side per particle");
    } else {
        sides.assign(static_cast<std::size_t>(n), f.num("side"));
    }
    for (double s : sides)
        if (!(s > 0.0)) rep.error(f.at("side"), "sides must be > 0");
    f.finish();
    if (!rep.ok() || static_cast<int>(sides.size()) != n) return geometry::ParticleRectangle::cube(c, 1.0);
    geometry::ParticleRectangle r(c, sides);
    return r;
}

stochastic::EnergySpec parse_energy(Fields f, ValidationReport& rep) {
    stochastic::EnergySpec e;
    if (f.has("E")) {
        e = stochastic::EnergySpec::at(f.num("E"));
    } else {
        const auto iv = f.nums("interval");
        if (iv.size() != 2 || !(iv[0] <= iv[1])) {
            rep.error(f.at("interval"), "must be [lo, hi] with lo <= hi (or give \"E\")");
        } else {
            e = stochastic::EnergySpec::interval(iv[0], iv[1], static_cast<int>(f.integer("points", 101)),
                                                 f.boolean("refine", true));
            if (!e.single() && e.points < 2) rep.error(f.at("points"), "must be >= 2");
        }
    }
    f.finish();
    return e;
}

resolvent::QualitySpec parse_quality(Fields f, ValidationReport& rep) {
    const auto kind = f.str("kind", std::nullopt,
                            {"suitable", "ses", "regular", "suitably_nonresonant", "nonresonant", "good"});
    resolvent::QualitySpec q;
    q.kind = resolvent::quality_kind_from_string(kind.empty() ? "suitable" : kind);
    q.parameter = f.num("parameter");
    if (q.kind == resolvent::QualityKind::Good) {
        q.beta = f.num("beta");
        positive(rep, f.at("beta"), q.beta);
    }
    positive(rep, f.at("parameter"), q.parameter);
    f.finish();
    return q;
}

void require_samples(ExperimentConfig& cfg, Fields& top, ValidationReport& rep, std::size_t minimum) {
    cfg.samples = top.unsigned_integer("samples");
    if (cfg.samples < minimum)
        rep.error(top.at("samples"), "must be >= " + std::to_string(minimum) + " for this experiment");
}

WegnerConfig parse_wegner(Fields f, const model::ModelParams& m, ValidationReport& rep) {
    WegnerConfig w;
    w.estimator = f.str("estimator", "trace", {"trace", "resolvent-norm"});
    w.box = parse_box(f.object("box", true), m.n, m.d, rep);
    if (w.estimator == "trace") {
        const auto iv = f.nums("interval");
        if (iv.size() != 2 || !(iv[0] <= iv[1])) rep.error(f.at("interval"), "must be [lo, hi] with lo <= hi");
        else w.lo = iv[0], w.hi = iv[1];
    } else {
        w.E = f.num("E");
        w.eps = f.num("eps");
        if (w.eps < 0.0) rep.error(f.at("eps"), "must be >= 0");
    }
    if (rep.ok()) check_dense_cap(w.box, f.at("box"), rep);
    f.finish();
    return w;
}

BoxQualityConfig parse_box_quality(Fields f, const model::ModelParams& m, ValidationReport& rep) {
    BoxQualityConfig b;
    b.box = parse_box(f.object("box", true), m.n, m.d, rep);
    b.energy = parse_energy(f.object("energy", true), rep);
    b.quality = parse_quality(f.object("quality", true), rep);
    if (rep.ok()) check_dense_cap(b.box, f.at("box"), rep);
    f.finish();
    return b;
}

TwoBoxConfig parse_two_box(Fields f, const model::ModelParams& m, ValidationReport& rep) {
    TwoBoxConfig t;
    t.first = parse_box(f.object("first", true), m.n, m.d, rep);
    t.second = parse_box(f.object("second", true), m.n, m.d, rep);
    t.eps = f.num("eps");
    if (t.eps < 0.0) rep.error(f.at("eps"), "must be >= 0");
    t.independent_fields = f.boolean("independent_fields", false);
    if (rep.ok()) {
        if (!geometry::partially_separated(t.first, t.second))
            rep.error(f.at("second"), "the two rectangles must be partially separated (some one-particle box of "
                                      "one misses the projection of the other)");
        check_dense_cap(t.first, f.at("first"), rep);
        check_dense_cap(t.second, f.at("second"), rep);
    }
    f.finish();
    return t;
}

IntervalEventConfig parse_interval_event(Fields f, const model::ModelParams& m, ValidationReport& rep) {
    IntervalEventConfig c;
    c.x = parse_center(f, "x", m.n, m.d, rep);
    c.y = parse_center(f, "y", m.n, m.d, rep);
    c.L = f.num("L");
    c.m = f.num("m");
    positive(rep, f.at("L"), c.L);
    positive(rep, f.at("m"), c.m);
    c.energy = parse_energy(f.object("energy", true), rep);
    if (rep.ok()) {
        const double dh = geometry::hausdorff(c.x, c.y);
        if (dh < c.L)
            rep.error(f.at("y"), "d_H(x, y) >= L violated (d_H = " + fmt(dh) + ", L = " + fmt(c.L) + ")");
        check_dense_cap(geometry::ParticleRectangle::cube(c.x, c.L), f.at("L"), rep);
    }
    f.finish();
    return c;
}

MsaCheckConfig parse_msa_check(Fields f, const model::ModelParams& m, ValidationReport& rep) {
    MsaCheckConfig c;
    c.check = f.str("check", "msa", {"msa", "pi-transfer", "energy-shift", "implications", "preregular"});
    c.E = f.num("E");
    if (c.check == "msa") {
        c.center = parse_center(f, "center", m.n, m.d, rep);
        c.L = f.num("L");
        c.ell = f.num("ell");
        positive(rep, f.at("L"), c.L);
        positive(rep, f.at("ell"), c.ell);
        auto g = f.object("msa", true);
        const auto mode = g.str("mode", std::nullopt, {"suitable", "regular", "ses"});
        c.msa.mode = mode == "regular" ? resolvent::MsaMode::Regular
                     : mode == "ses"   ? resolvent::MsaMode::Ses
                                       : resolvent::MsaMode::Suitable;
        c.msa.J = static_cast<int>(g.integer("J", 1));
        if (c.msa.J < 1) rep.error(g.at("J"), "must be >= 1");
        if (c.msa.mode == resolvent::MsaMode::Suitable) {
            c.msa.theta = g.num("theta");
            c.msa.s = g.num("s");
            positive(rep, g.at("theta"), c.msa.theta);
            positive(rep, g.at("s"), c.msa.s);
        } else if (c.msa.mode == resolvent::MsaMode::Regular) {
            c.msa.m_ell = g.num("m_ell");
            c.msa.kappa = g.num("kappa");
            c.msa.beta = g.num("beta");
            positive(rep, g.at("m_ell"), c.msa.m_ell);
            positive(rep, g.at("beta"), c.msa.beta);
        } else {
            c.msa.zeta0 = g.num("zeta0");
            c.msa.beta = g.num("beta");
            positive(rep, g.at("zeta0"), c.msa.zeta0);
            positive(rep, g.at("beta"), c.msa.beta);
        }
        g.finish();
        if (c.ell > 0 && c.L > 0) {
            if (c.ell > c.L / 6.0)
                rep.error(f.at("ell"), "ell <= L/6 violated (ell = " + fmt(c.ell) + ", L/6 = " + fmt(c.L / 6.0) +
                                           "); the suitable cover needs it");
            else if (!geometry::select_alpha(c.L, c.ell))
                rep.error(f.at("ell"), "no cover spacing alpha in [3/5, 4/5] of the form (L - ell)/(2 ell k)");
        }
        if (rep.ok()) check_dense_cap(geometry::ParticleRectangle::cube(c.center, c.L), f.at("L"), rep);
    } else {
        c.box = parse_box(f.object("box", true), m.n, m.d, rep);
        if (c.check == "pi-transfer") {
            auto g = f.object("transfer", true);
            const auto mode = g.str("mode", std::nullopt, {"suitable", "regular", "ses"});
            c.transfer.mode = mode == "regular" ? resolvent::TransferMode::Regular
                              : mode == "ses"   ? resolvent::TransferMode::Ses
                                                : resolvent::TransferMode::Suitable;
            c.transfer.parameter = g.num("parameter");
            c.transfer.zeta_prime = g.num("zeta_prime", 0.0);
            positive(rep, g.at("parameter"), c.transfer.parameter);
            g.finish();
            if (m.n < 2) rep.error("model.n", "a partially interactive split needs n >= 2");
        } else if (c.check == "energy-shift") {
            c.m = f.num("m");
            c.beta = f.num("beta");
            c.points = static_cast<int>(f.integer("points", 21));
            positive(rep, f.at("m"), c.m);
            positive(rep, f.at("beta"), c.beta);
            if (c.points < 1) rep.error(f.at("points"), "must be >= 1");
        } else if (c.check == "implications") {
            c.m = f.num("m");
            c.theta = f.num("theta");
            c.zeta = f.num("zeta");
            positive(rep, f.at("m"), c.m);
            positive(rep, f.at("theta"), c.theta);
            positive(rep, f.at("zeta"), c.zeta);
            if (rep.ok() && !(c.box.min_side() > 1.0)) rep.error(f.at("box"), "side must exceed 1");
        } else {
            c.ell = f.num("ell");
            positive(rep, f.at("ell"), c.ell);
            auto g = f.object("preregular", true);
            c.preregular.m_star = g.num("m_star");
            c.preregular.beta = g.num("beta");
            c.preregular.gamma = g.num("gamma", 0.0);
            c.preregular.c1 = g.num("c1");
            c.preregular.c2 = g.num("c2");
            c.preregular.c3 = g.num("c3");
            g.finish();
            if (m.n < 2) rep.error("model.n", "a partially interactive split needs n >= 2");
        }
        if (rep.ok() && (c.check == "pi-transfer" || c.check == "preregular") &&
            !geometry::classify_interactivity(c.box, m.interaction.r0()).partially_interactive)
            rep.error(f.at("box"), "box is fully interactive; the check needs a partially interactive box");
        if (rep.ok()) check_dense_cap(c.box, f.at("box"), rep);
    }
    f.finish();
    return c;
}

std::optional<stochastic::ExponentTuple> parse_chain(Fields f) {
    if (!f.valid()) return std::nullopt;
    stochastic::ExponentTuple t;
    t.zeta = f.num("zeta");
    t.zeta2 = f.num("zeta2");
    t.zeta1 = f.num("zeta1");
    t.beta = f.num("beta");
    t.zeta0 = f.num("zeta0");
    t.tau = f.num("tau");
    t.gamma = f.num("gamma");
    for (auto [key, slot] : {std::pair{"r", &t.r}, {"kappa", &t.kappa}, {"p", &t.p}, {"s", &t.s}, {"theta", &t.theta}})
        if (f.has(key)) *slot = f.num(key);
    t.N = static_cast<int>(f.integer("N", 1));
    t.d = static_cast<int>(f.integer("d", 1));
    f.finish();
    return t;
}

void warn_constraints(ValidationReport& rep, const std::string& field, const std::vector<stochastic::Constraint>& cs) {
    for (const auto& c : stochastic::violated(cs))
        rep.warn(field, c.name + " violated (" + fmt(c.lhs) + (c.strict ? " >= " : " > ") + fmt(c.rhs) +
                            "); results are still computed and flagged");
}

RecursionConfig parse_recursion(Fields f, ValidationReport& rep) {
    RecursionConfig r;
    r.stage = f.str("stage", std::nullopt, {"msa1", "msa2", "msa3", "msa4", "chain"});
    if (f.has("chain")) r.chain = parse_chain(f.object("chain", true));
    if (r.stage == "msa1") {
        auto& P = r.msa1;
        P.p0 = f.num("p0");
        P.Y = f.num("Y");
        P.N = static_cast<int>(f.integer("N", 1));
        P.d = static_cast<int>(f.integer("d", 1));
        P.p = f.num("p");
        P.J = static_cast<int>(f.integer("J", 1));
        P.L0 = f.num("L0");
        P.max_steps = static_cast<int>(f.integer("max_steps", 64));
        P.closure_steps = static_cast<int>(f.integer("closure_steps", 8));
        if (!(P.p0 >= 0.0 && P.p0 <= 1.0)) rep.error(f.at("p0"), "must lie in [0, 1]");
        if (!(P.Y > 1.0)) rep.error(f.at("Y"), "must be > 1");
        if (!(P.L0 > 1.0)) rep.error(f.at("L0"), "must be > 1");
        positive(rep, f.at("p"), P.p);
        if (P.J < 1 || P.N < 1 || P.d < 1 || P.max_steps < 1 || P.closure_steps < 0)
            rep.error(f.at("J"), "J, N, d, max_steps must be >= 1 and closure_steps >= 0");
        if (rep.ok()) {
            const double C = P.N * P.d * std::log(2.0 * P.Y);
            warn_constraints(rep, f.at("Y"), {{"Y >= 4000 N^(N+1)", 4000.0 * std::pow(P.N, P.N + 1), P.Y, false}});
            warn_constraints(rep, f.at("p0"), {{"p0 < (2Y)^(-Nd) / 2", P.p0 > 0 ? std::log(P.p0) : -INFINITY,
                                                -std::log(2.0) - C, true}});
        }
    } else if (r.stage == "msa2") {
        auto& P = r.msa2;
        P.L0 = f.num("L0");
        P.m0 = f.num("m0");
        P.gamma = f.num("gamma");
        P.kappa = f.num("kappa");
        P.p = f.num("p");
        P.N = static_cast<int>(f.integer("N", 1));
        P.d = static_cast<int>(f.integer("d", 1));
        if (f.has("beta")) P.beta = f.num("beta");
        P.max_steps = static_cast<int>(f.integer("max_steps", 200));
        if (P.N < 1 || P.d < 1 || P.max_steps < 1) rep.error(f.at("N"), "N, d, max_steps must be >= 1");
        if (rep.ok()) warn_constraints(rep, f.at("gamma"), stochastic::recursion_msa2({.L0 = P.L0, .m0 = P.m0, .gamma = P.gamma, .kappa = P.kappa, .p = P.p, .N = P.N, .d = P.d, .beta = P.beta, .max_steps = 1}).constraints);
    } else if (r.stage == "msa3") {
        auto& P = r.msa3;
        if (f.has("log_p0")) {
            P.log_p0 = f.num("log_p0");
        } else {
            const double p0 = f.num("p0");
            if (!(p0 >= 0.0 && p0 <= 1.0)) rep.error(f.at("p0"), "must lie in [0, 1] (or give log_p0)");
            P.log_p0 = p0 > 0.0 ? std::log(p0) : -INFINITY;
        }
        P.Y = f.num("Y");
        P.zeta0 = f.num("zeta0");
        P.zeta1 = f.num("zeta1");
        P.N = static_cast<int>(f.integer("N", 1));
        P.d = static_cast<int>(f.integer("d", 1));
        P.L0 = f.num("L0");
        P.max_steps = static_cast<int>(f.integer("max_steps", 64));
        if (!(P.log_p0 <= 0.0)) rep.error(f.at("log_p0"), "must be <= 0");
        if (!(P.Y > 1.0) || !(P.L0 > 1.0)) rep.error(f.at("Y"), "Y and L0 must be > 1");
        if (!(std::pow(P.Y, P.zeta0) >= 1.0)) rep.error(f.at("zeta0"), "Y^zeta0 must be >= 1");
        if (P.N < 1 || P.d < 1 || P.max_steps < 1) rep.error(f.at("N"), "N, d, max_steps must be >= 1");
        if (rep.ok()) warn_constraints(rep, f.at("Y"), stochastic::recursion_msa3({.log_p0 = P.log_p0, .Y = P.Y, .zeta0 = P.zeta0, .zeta1 = P.zeta1, .N = P.N, .d = P.d, .L0 = P.L0, .max_steps = 1}).preconditions);
    } else if (r.stage == "msa4") {
        r.msa4_L = f.nums("L");
        r.beta = f.num("beta");
        r.zeta2 = f.num("zeta2");
        r.gamma = f.num("gamma");
        positive(rep, f.at("gamma"), r.gamma);
        for (double L : r.msa4_L)
            if (!(L > 0.0)) rep.error(f.at("L"), "scales must be > 0");
    } else if (!r.chain) {
        rep.error(f.at("chain"), "required for stage \"chain\"");
    }
    if (r.chain && rep.ok()) {
        for (const auto& c : stochastic::validate_exponent_chain(*r.chain).violations)
            rep.warn(f.at("chain"), c.name + " violated (" + fmt(c.lhs) + " vs " + fmt(c.rhs) + ")");
    }
    f.finish();
    return r;
}

LocalizationConfig parse_localization(Fields f, const model::ModelParams& m, ValidationReport& rep) {
    LocalizationConfig c;
    c.box = parse_box(f.object("box", true), m.n, m.d, rep);
    if (f.has("kernel_interval")) {
        const auto iv = f.nums("kernel_interval");
        if (iv.size() != 2 || !(iv[0] <= iv[1])) rep.error(f.at("kernel_interval"), "must be [lo, hi] with lo <= hi");
        else c.lo = iv[0], c.hi = iv[1];
    }
    c.near_distance = f.num("near_distance", 2.0);
    c.far_distance = f.num("far_distance", 6.0);
    if (!(c.near_distance < c.far_distance)) rep.error(f.at("far_distance"), "must exceed near_distance");
    c.amplitude_pairs = static_cast<int>(f.integer("amplitude_pairs", 16));
    if (c.amplitude_pairs < 0) rep.error(f.at("amplitude_pairs"), "must be >= 0");
    if (f.has("times")) {
        c.times = f.nums("times");
    } else {
        const double t_max = f.num("t_max", 100.0), dt = f.num("dt", 0.1);
        if (!(dt > 0.0) || !(t_max >= 0.0)) {
            rep.error(f.at("dt"), "needs dt > 0 and t_max >= 0");
        } else {
            const auto steps = static_cast<long>(std::floor(t_max / dt + 1e-9));
            for (long k = 0; k <= steps; ++k) c.times.push_back(static_cast<double>(k) * dt);
        }
    }
    if (rep.ok()) check_dense_cap(c.box, f.at("box"), rep);
    f.finish();
    return c;
}

CoverSelftestConfig parse_cover(Fields f, ValidationReport& rep) {
    CoverSelftestConfig c;
    c.n = static_cast<int>(f.integer("n", 1));
    c.d = static_cast<int>(f.integer("d", 1));
    c.ells = f.ints("ell");
    c.ratios = f.ints("ratio");
    c.bad_sets = static_cast<int>(f.integer("bad_sets", 500));
    c.max_bad = static_cast<int>(f.integer("max_bad", 3));
    c.multiplier_j = static_cast<int>(f.integer("multiplier_j", 10));
    c.multiplier_N = static_cast<int>(f.integer("multiplier_N", 4));
    if (c.n < 1 || c.d < 1) rep.error(f.at("n"), "n and d must be >= 1");
    for (int l : c.ells)
        if (l < 1) rep.error(f.at("ell"), "scales must be >= 1");
    for (int q : c.ratios)
        if (q < 6) rep.error(f.at("ratio"), "ell <= L/6 violated (L/ell = " + std::to_string(q) + " < 6)");
    if (c.bad_sets < 0 || c.max_bad < 1 || c.multiplier_j < 1 || c.multiplier_N < 1)
        rep.error(f.at("bad_sets"), "bad_sets >= 0 and max_bad, multiplier_j, multiplier_N >= 1 required");
    f.finish();
    return c;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    for (const auto& [k, s] : kind_table())
        if (k == kind) return s;
    return "?";
}

const std::vector<std::string>& experiment_kind_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [_, s] : kind_table()) v.push_back(s);
        return v;
    }();
    return names;
}

void ValidationReport::error(std::string field, std::string message) {
    issues.push_back({true, std::move(field), std::move(message)});
}
void ValidationReport::warn(std::string field, std::string message) {
    issues.push_back({false, std::move(field), std::move(message)});
}
std::size_t ValidationReport::errors() const {
    return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const Issue& i) { return i.error; }));
}
bool ValidationReport::ok() const { return errors() == 0; }

json ValidationReport::to_json() const {
    json out = {{"valid", ok()}, {"errors", json::array()}, {"warnings", json::array()}};
    for (const auto& i : issues) out[i.error ? "errors" : "warnings"].push_back({{"field", i.field}, {"message", i.message}});
    return out;
}

ExperimentConfig parse_config(const json& doc, ValidationReport& rep) {
    ExperimentConfig cfg;
    Fields top(&doc, "", rep);
    if (!top.valid()) return cfg;
    cfg.schema_version = static_cast<int>(top.integer("schema_version"));
    if (top.has("schema_version") && cfg.schema_version != kSchemaVersion)
        rep.error("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
    const auto kind = top.str("kind", std::nullopt, experiment_kind_names());
    for (const auto& [k, s] : kind_table())
        if (s == kind) cfg.kind = k;
    cfg.seed = top.unsigned_integer("seed", 1);
    if (top.has("workers")) {
        cfg.workers = static_cast<int>(top.integer("workers"));
        if (*cfg.workers < 0) rep.error("workers", "must be >= 0");
    }
    if (top.has("output_dir")) cfg.output_dir = top.str("output_dir", std::nullopt, {});
    const bool kind_ok = !kind.empty() && rep.issues.end() == std::find_if(rep.issues.begin(), rep.issues.end(),
                                                                           [](const Issue& i) { return i.field == "kind"; });
    const bool needs_model = kind_ok && cfg.kind != ExperimentKind::Recursion && cfg.kind != ExperimentKind::CoverSelftest;
    if (needs_model) {
        cfg.model = parse_model(top.object("model", true), rep);
    } else if (top.has("model")) {
        top.object("model", false);
        rep.warn("model", "ignored for this experiment kind");
    }
    auto body = top.object("experiment", true);
    if (!kind_ok || !body.valid()) {
        top.finish();
        return cfg;
    }
    const auto& m = cfg.model;
    switch (cfg.kind) {
        case ExperimentKind::Wegner:
            require_samples(cfg, top, rep, 1);
            cfg.body = parse_wegner(body, m, rep);
            break;
        case ExperimentKind::BoxQuality:
            require_samples(cfg, top, rep, 100);
            cfg.body = parse_box_quality(body, m, rep);
            break;
        case ExperimentKind::TwoBox:
            require_samples(cfg, top, rep, 1);
            cfg.body = parse_two_box(body, m, rep);
            break;
        case ExperimentKind::IntervalEvent:
            require_samples(cfg, top, rep, 1);
            cfg.body = parse_interval_event(body, m, rep);
            break;
        case ExperimentKind::MsaCheck:
            require_samples(cfg, top, rep, 1);
            cfg.body = parse_msa_check(body, m, rep);
            break;
        case ExperimentKind::Recursion:
            cfg.body = parse_recursion(body, rep);
            break;
        case ExperimentKind::Localization:
            require_samples(cfg, top, rep, 1);
            cfg.body = parse_localization(body, m, rep);
            break;
        case ExperimentKind::CoverSelftest:
            cfg.body = parse_cover(body, rep);
            break;
    }
    top.finish();
    return cfg;
}

}  // namespace mpa::lab
