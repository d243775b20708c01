#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace mocover {

/// Exit codes shared by the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitSolverFailure = 1, kExitInvalidInput = 2 };

struct CommandOptions {
  std::optional<std::uint64_t> seed;         ///< overrides the config seed
  std::optional<std::filesystem::path> out;  ///< output directory override
};

/// Solves the configured problem and writes covering.json, report.csv,
/// config.cfg and, with save_steps, steps/covering_<depth>.json into the run
/// directory (default: <output>/<name>-<config hash>).
int cmd_run(const std::filesystem::path& config_path, const CommandOptions& options,
            std::ostream& out, std::ostream& err);

/// Run directory cmd_run would use.
std::filesystem::path run_directory(const std::filesystem::path& config_path,
                                    const CommandOptions& options);

/// Per-depth Hausdorff distance (hausdorff.csv) and box-count ratio B/A
/// (ratio.csv) between two runs, plus the cell-set inclusion A within B.
/// Output goes to options.out or run_b.
int cmd_compare(const std::filesystem::path& run_a, const std::filesystem::path& run_b,
                const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Writes field.csv (KKT residual on a regular grid) and prints the
/// 2 ||eps||_inf iso level.
int cmd_residual_field(const std::filesystem::path& config_path, int resolution,
                       const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace mocover
