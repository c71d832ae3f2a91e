#include "mpa/lab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mpa/errors.hpp"
#include "mpa/lab/runner.hpp"

namespace mpa::lab {

namespace {

std::optional<json> load(const std::filesystem::path& path, std::ostream& err, int& code) {
    std::ifstream f(path);
    if (!f) {
        err << "error: cannot read " << path.string() << "\n";
        code = kExitIo;
        return std::nullopt;
    }
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        err << "error: " << path.string() << " is not valid JSON: " << e.what() << "\n";
        code = kExitContract;
        return std::nullopt;
    }
}

void print_issues(const ValidationReport& rep, std::ostream& err) {
    for (const auto& i : rep.issues)
        err << (i.error ? "error" : "warning") << ": " << (i.field.empty() ? "<root>" : i.field) << ": " << i.message << "\n";
}

}  // namespace

int effective_workers(std::optional<int> flag, std::optional<int> from_config) {
    if (const char* env = std::getenv("MPA_WORKERS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 0) throw ContractError("MPA_WORKERS must be a non-negative integer");
        return static_cast<int>(v);
    }
    if (flag) return *flag;
    return from_config.value_or(0);
}

int validate_command(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
    ValidationReport rep;
    std::ostringstream load_err;
    int code = kExitOk;
    if (const auto doc = load(config, load_err, code)) {
        parse_config(*doc, rep);
    } else {
        std::string msg = load_err.str();
        if (msg.rfind("error: ", 0) == 0) msg = msg.substr(7);
        while (!msg.empty() && msg.back() == '\n') msg.pop_back();
        rep.error("", msg);
    }
    out << rep.to_json().dump(2) << "\n";
    print_issues(rep, err);
    return kExitOk;
}

int run_command(const std::filesystem::path& config, std::optional<int> workers,
                std::optional<std::filesystem::path> out_dir, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    const auto doc = load(config, err, code);
    if (!doc) return code;
    ValidationReport rep;
    const auto cfg = parse_config(*doc, rep);
    print_issues(rep, err);
    if (!rep.ok()) return kExitContract;

    std::filesystem::path dir;
    if (out_dir) dir = *out_dir;
    else if (cfg.output_dir) dir = *cfg.output_dir;
    else dir = std::filesystem::path("runs") / (to_string(cfg.kind) + "-seed" + std::to_string(cfg.seed));

    try {
        const int k = effective_workers(workers, cfg.workers);
        const std::string started = utc_timestamp();
        const auto result = run_experiment(cfg, k);
        const auto manifest = write_artifacts(result, *doc, dir, started);
        out << result.summary.dump(2) << "\n";
        err << "wrote " << manifest.files.size() + 1 << " files to " << dir.string() << "\n";
        return kExitOk;
    } catch (const CapExceeded& e) {
        err << "error: size cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const NumericFailure& e) {
        err << "error: numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const RegionOverflow& e) {
        err << "error: region overflow: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

int emit_schema_command(std::ostream& out) {
    out << config_schema().dump(2) << "\n";
    return kExitOk;
}

}  // namespace mpa::lab
