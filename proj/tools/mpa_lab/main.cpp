#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "mpa/lab/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Random multi-particle lattice operator experiments"};
    app.require_subcommand(1);

    std::string run_config, validate_config, out_dir;
    std::optional<int> workers;

    auto* run = app.add_subcommand("run", "Run an experiment and write its artifacts");
    run->add_option("config", run_config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--workers", workers, "Worker threads (0 = all cores; MPA_WORKERS overrides)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--out", out_dir, "Output directory");

    auto* validate = app.add_subcommand("validate", "Check a config without computing anything");
    validate->add_option("config", validate_config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

    auto* schema = app.add_subcommand("emit-schema", "Print the JSON Schema of the config format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mpa::lab::kExitContract;
    }

    if (*run) {
        std::optional<std::filesystem::path> out;
        if (!out_dir.empty()) out = out_dir;
        return mpa::lab::run_command(run_config, workers, out, std::cout, std::cerr);
    }
    if (*validate) return mpa::lab::validate_command(validate_config, std::cout, std::cerr);
    if (*schema) return mpa::lab::emit_schema_command(std::cout);
    return mpa::lab::kExitContract;
}
