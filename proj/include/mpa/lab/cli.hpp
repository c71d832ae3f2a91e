#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace mpa::lab {

// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitContract = 2, kExitCap = 3, kExitNumeric = 4 };

// MPA_WORKERS (environment) wins over the command-line flag, which wins over the config; 0 means all cores.
int effective_workers(std::optional<int> flag, std::optional<int> from_config);

// Always exits 0: the report (stdout, JSON) carries "valid" and every issue.
int validate_command(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int run_command(const std::filesystem::path& config, std::optional<int> workers,
                std::optional<std::filesystem::path> out_dir, std::ostream& out, std::ostream& err);
int emit_schema_command(std::ostream& out);

}  // namespace mpa::lab
