#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mpa/geometry/lattice.hpp"
#include "mpa/model/params.hpp"
#include "mpa/resolvent/msa_check.hpp"
#include "mpa/stochastic/estimators.hpp"
#include "mpa/stochastic/recursion.hpp"

namespace mpa::lab {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind { Wegner, BoxQuality, TwoBox, IntervalEvent, MsaCheck, Recursion, Localization, CoverSelftest };

std::string to_string(ExperimentKind kind);
const std::vector<std::string>& experiment_kind_names();

struct Issue {
    bool error = true;  // false: warning
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> issues;

    void error(std::string field, std::string message);
    void warn(std::string field, std::string message);
    bool ok() const;
    std::size_t errors() const;
    json to_json() const;
};

struct WegnerConfig {
    std::string estimator = "trace";  // trace | resolvent-norm
    geometry::ParticleRectangle box;
    double lo = 0.0, hi = 0.0;        // trace interval
    double E = 0.0, eps = 0.0;        // resolvent-norm
};

struct BoxQualityConfig {
    geometry::ParticleRectangle box;
    stochastic::EnergySpec energy;
    resolvent::QualitySpec quality;
};

struct TwoBoxConfig {
    geometry::ParticleRectangle first, second;
    double eps = 0.0;
    bool independent_fields = false;
};

struct IntervalEventConfig {
    geometry::RealCenter x, y;
    double L = 0.0, m = 0.0;
    stochastic::EnergySpec energy;
};

struct MsaCheckConfig {
    std::string check = "msa";  // msa | pi-transfer | energy-shift | implications | preregular
    geometry::RealCenter center;
    geometry::ParticleRectangle box;  // pi-transfer, energy-shift, implications, preregular
    double L = 0.0, ell = 0.0;
    double E = 0.0;
    resolvent::MsaSpec msa;
    resolvent::TransferSpec transfer;
    double m = 0.0, beta = 0.0, theta = 0.0, zeta = 0.0;
    int points = 21;
    resolvent::PreregularSpec preregular;
};

struct RecursionConfig {
    std::string stage = "msa1";  // msa1 | msa2 | msa3 | msa4 | chain
    stochastic::Msa1Params msa1;
    stochastic::Msa2Params msa2;
    stochastic::Msa3Params msa3;
    std::vector<double> msa4_L;
    double beta = 0.0, zeta2 = 0.0, gamma = 0.0;
    std::optional<stochastic::ExponentTuple> chain;
};

struct LocalizationConfig {
    geometry::ParticleRectangle box;
    double lo = -1e300, hi = 1e300;  // kernel interval
    double near_distance = 2.0, far_distance = 6.0;
    std::vector<double> times;
    int amplitude_pairs = 16;
};

struct CoverSelftestConfig {
    int n = 1, d = 1;
    std::vector<int> ells;
    std::vector<int> ratios;
    int bad_sets = 500;
    int max_bad = 3;
    int multiplier_j = 10;
    int multiplier_N = 4;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    ExperimentKind kind = ExperimentKind::Wegner;
    std::uint64_t seed = 1;
    std::size_t samples = 0;
    std::optional<int> workers;
    std::optional<std::string> output_dir;
    model::ModelParams model;
    std::variant<WegnerConfig, BoxQualityConfig, TwoBoxConfig, IntervalEventConfig, MsaCheckConfig, RecursionConfig,
                 LocalizationConfig, CoverSelftestConfig>
        body;
};

// Parses and checks every field and cross-field constraint without computing anything.
// The returned config is meaningful only when the report has no errors.
ExperimentConfig parse_config(const json& doc, ValidationReport& report);

// JSON Schema (draft 2020-12) of the configuration document.
json config_schema();

}  // namespace mpa::lab
