#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "table.hpp"
#include "wgqed/geometry.hpp"

namespace wgqed::cli {

struct CommandOutput {
    Table table;
    std::vector<std::string> warnings;  // in grid order
    std::string report;                 // human-readable summary (conditions, verify)
    nlohmann::ordered_json mirror;      // structured companion (conditions)
    int exit_code = 0;
};

CommandOutput cmd_modes(const RunConfig& cfg);
CommandOutput cmd_spectrum(const RunConfig& cfg);
CommandOutput cmd_sweep2d(const RunConfig& cfg);
CommandOutput cmd_cutoff_map(const RunConfig& cfg);
CommandOutput cmd_conditions(const RunConfig& cfg);
/// Exit code 4 if the oracle fails or any relative error exceeds `tolerance`.
CommandOutput cmd_verify(const RunConfig& cfg, double tolerance = 1e-5);

/// Energies on the sweep axis: the open interior of a channel window, or the
/// inclusive range omega_min..omega_max.
std::vector<double> sweep_grid(const RunConfig& cfg);

/// n energies spread evenly over (1.01 omega_1, 0.99 omega_3) minus the band
/// within 1% of omega_2.
std::vector<double> oracle_grid(const WaveguideGeometry& geom, int n);

/// Runs fn(0..n-1) on up to `threads` workers (0: hardware concurrency). The
/// exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace wgqed::cli
