#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pwbands/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Plane-wave band structures of cubic crystals"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    struct Entry {
        const char* name;
        const char* help;
        pwbands::Command cmd;
    };
    const Entry entries[] = {
        {"bands", "Sweep the k-path and write bands.csv/json/svg", pwbands::Command::Bands},
        {"gaps", "Print the path-gap table and write gaps.json", pwbands::Command::Gaps},
        {"converge", "Solve at one k-point for each basis cutoff", pwbands::Command::Converge},
        {"info", "Print lattice, reciprocal lattice and basis size", pwbands::Command::Info},
    };
    std::optional<pwbands::Command> chosen;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", config, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
        sub->callback([&chosen, cmd = e.cmd] { chosen = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pwbands::kExitConfigError;
    }

    std::optional<std::filesystem::path> out;
    if (!out_dir.empty()) out = out_dir;
    return pwbands::run_command(*chosen, config, out, std::cout, std::cerr);
}
