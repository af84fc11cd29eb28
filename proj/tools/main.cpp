// wgqed: spectra, sweeps, cutoff maps and condition reports for a V-type
// emitter in a rectangular waveguide.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/table.hpp"
#include "wgqed/errors.hpp"

namespace {

using namespace wgqed;
using namespace wgqed::cli;

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitOracle = 4;

struct Overrides {
    std::string config;
    std::string out;
    std::optional<int> points;
    bool red_shift = false;
    std::string format;
};

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::json) {
        write_json(table, out);
    } else {
        write_csv(table, out);
    }
}

int run(const std::string& command, const Overrides& ov) {
    RunConfig cfg = load_config(ov.config);
    if (!ov.out.empty()) cfg.output_path = ov.out;
    if (!ov.format.empty()) cfg.format = ov.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (ov.red_shift) cfg.self.include_red_shift = true;
    if (ov.points) {
        if (command == "cutoff-map") {
            cfg.cutoff_map.points = *ov.points;
        } else {
            cfg.sweep.points = *ov.points;
        }
    }

    CommandOutput result;
    if (command == "modes") result = cmd_modes(cfg);
    else if (command == "spectrum") result = cmd_spectrum(cfg);
    else if (command == "sweep2d") result = cmd_sweep2d(cfg);
    else if (command == "cutoff-map") result = cmd_cutoff_map(cfg);
    else if (command == "conditions") result = cmd_conditions(cfg);
    else result = cmd_verify(cfg);

    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    const bool to_stdout = cfg.output_path.empty();
    if (to_stdout) {
        write_table(result.table, cfg.format, std::cout);
    } else {
        std::ofstream file(cfg.output_path, std::ios::binary);
        if (!file) throw ConfigError(ov.config, 0, "output.path", "cannot write " + cfg.output_path);
        write_table(result.table, cfg.format, file);
    }
    (to_stdout ? std::cerr : std::cout) << result.report;

    if (command == "conditions" && !to_stdout && cfg.format == OutputFormat::csv) {
        std::filesystem::path mirror(cfg.output_path);
        mirror.replace_extension(".json");
        std::ofstream file(mirror, std::ios::binary);
        if (!file) throw ConfigError(ov.config, 0, "output.path", "cannot write " + mirror.string());
        file << result.mirror.dump(1) << '\n';
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-photon scattering off a V-type emitter in a rectangular waveguide"};
    app.require_subcommand(1);
    Overrides ov;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"modes", "Table of TM modes and their cutoffs"},
        {"spectrum", "Reflection and transmission against the input energy"},
        {"sweep2d", "Reflectivity over the input energy and a second parameter"},
        {"cutoff-map", "Cutoff frequencies against the waveguide width"},
        {"conditions", "Perfect-transmission and perfect-reflection conditions"},
        {"verify", "Compare the closed-form self-energy with brute-force quadrature"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", ov.config, "Configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", ov.out, "Output path (default: standard output)");
        sub->add_option("--points", ov.points, "Number of sweep points")->check(CLI::Range(2, 100000000));
        sub->add_flag("--red-shift", ov.red_shift, "Keep the Lamb shift of closed modes");
        sub->add_option("--format", ov.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, ov);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const OracleFailure& e) {
        std::cerr << "oracle failure: " << e.what() << '\n';
        return kExitOracle;
    } catch (const wgqed::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}
