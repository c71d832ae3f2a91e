#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "mpa/errors.hpp"
#include "mpa/lab/runner.hpp"

#ifndef MPA_VERSION
#define MPA_VERSION "unknown"
#endif

namespace mpa::lab {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q.push_back('"');
        q.push_back(c);
    }
    q.push_back('"');
    return q;
}

void csv_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_cell(row[i]);
    }
    out.push_back('\n');
}

void write_atomic(const fs::path& path, const std::string& bytes) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        f.flush();
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

std::string csv_text(const Table& table) {
    std::string out;
    csv_row(out, table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw ContractError("table " + table.name + ": row width does not match the header");
        csv_row(out, row);
    }
    return out;
}

json RunManifest::to_json() const {
    json files_json = json::array();
    for (const auto& f : files) files_json.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    return {{"config_sha256", config_sha256},
            {"code_version", code_version},
            {"started_at", started_at},
            {"finished_at", finished_at},
            {"files", files_json}};
}

RunManifest write_artifacts(const ExperimentOutput& out, const json& config_doc, const fs::path& dir,
                            const std::string& started_at) {
    fs::create_directories(dir);
    RunManifest m;
    m.code_version = code_version();
    m.started_at = started_at;

    const std::string config_bytes = config_doc.dump(2) + "\n";
    m.config_sha256 = sha256_hex(config_bytes);

    std::vector<std::pair<std::string, std::string>> files;
    files.push_back({"config.json", config_bytes});
    files.push_back({"summary.json", out.summary.dump(2) + "\n"});
    std::string lines;
    for (const auto& r : out.records) lines += r.dump() + "\n";
    files.push_back({"records.jsonl", lines});
    for (const auto& t : out.tables) files.push_back({t.name + ".csv", csv_text(t)});

    for (const auto& [name, bytes] : files) {
        write_atomic(dir / name, bytes);
        m.files.push_back({name, sha256_hex(bytes), bytes.size()});
    }
    m.finished_at = utc_timestamp();
    write_atomic(dir / "manifest.json", m.to_json().dump(2) + "\n");
    return m;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string code_version() { return MPA_VERSION; }

}  // namespace mpa::lab
