#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace pwbands {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitNumericalError = 3,
};

enum class Command { Bands, Gaps, Converge, Info };

/// Loads the config, runs one command and maps failures onto exit codes.
/// Artifacts go to `out_dir` when given, else to output.directory from the config.
int run_command(Command cmd, const std::filesystem::path& config_file,
                const std::optional<std::filesystem::path>& out_dir, std::ostream& out,
                std::ostream& err);

}  // namespace pwbands
