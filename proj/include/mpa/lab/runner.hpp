#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mpa/lab/config.hpp"

namespace mpa::lab {

// RFC 4180 table; cells are preformatted (shortest round-trip decimals for doubles).
struct Table {
    std::string name;  // file stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentOutput {
    json summary;
    std::vector<json> records;  // one per sample (or per sequence element)
    std::vector<Table> tables;
};

// Runs a parsed, error-free config. The output never depends on `workers`.
ExperimentOutput run_experiment(const ExperimentConfig& cfg, int workers);

std::string sha256_hex(const std::string& bytes);
std::string csv_text(const Table& table);

struct ArtifactFile {
    std::string name;
    std::string sha256;
    std::size_t bytes = 0;
};

struct RunManifest {
    std::string config_sha256;
    std::string code_version;
    std::string started_at, finished_at;
    std::vector<ArtifactFile> files;
    json to_json() const;
};

// Writes summary.json, records.jsonl and <table>.csv, then manifest.json last; every file is
// written to a temporary name and renamed into place.
RunManifest write_artifacts(const ExperimentOutput& out, const json& config_doc, const std::filesystem::path& dir,
                            const std::string& started_at);

std::string utc_timestamp();
std::string code_version();

}  // namespace mpa::lab
