#pragma once

// Run configuration: a sectioned key = value text file.
//
//   [geometry]  b, aspect | a, c_light
//   [emitter]   omega1, omega2, lambda1 | dipole1, lambda2 | dipole2
//   [sweep]     window | omega_min + omega_max, points,
//               axis2 = omega1 | lambda2, axis2_min, axis2_max, axis2_points
//   [input]     kind = single | css | dark | custom, mode, amplitudes, normalize
//   [options]   red_shift, red_shift_modes, guard, threads, root_grid, tolerance
//   [modes]     count
//   [cutoff_map] b_min, b_max, points, modes, reference_omega, spacing = linear | log
//   [output]    path, format = csv | json
//
// Blank lines and text after '#' are ignored.

#include <complex>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgqed/emitter.hpp"
#include "wgqed/geometry.hpp"
#include "wgqed/selfenergy.hpp"

namespace wgqed::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& field, const std::string& what);

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

enum class OutputFormat { csv, json };
enum class InputKind { single, css, dark, custom };
enum class SecondAxis { none, omega1, lambda2 };

struct SweepConfig {
    std::optional<int> window;  // channel window index j: the open interval (omega_j, omega_{j+1})
    double omega_min = 0.0;
    double omega_max = 0.0;
    int points = 200;
    SecondAxis axis2 = SecondAxis::none;
    double axis2_min = 0.0;
    double axis2_max = 0.0;
    int axis2_points = 2;
};

struct InputConfig {
    InputKind kind = InputKind::single;
    int mode = 1;
    std::vector<std::complex<double>> amplitudes;  // custom amplitudes or free dark-state amplitudes
    bool normalize = false;
};

struct CutoffMapConfig {
    double b_min = 0.1;
    double b_max = 10.0;
    int points = 200;
    int modes = 4;
    double reference_omega = 0.943;
    bool log_spacing = false;
};

struct RunConfig {
    std::string source = "<config>";
    WaveguideGeometry geometry = WaveguideGeometry::from_aspect(1.2, 1.5);
    EmitterParams emitter{1.3, 1.1, 0.1, 0.1};
    SweepConfig sweep;
    InputConfig input;
    SelfEnergyOptions self;
    int threads = 0;  // 0: hardware concurrency
    int root_grid = 2000;
    double locus_tolerance = 1e-10;
    int mode_count = 4;
    CutoffMapConfig cutoff_map;
    std::string output_path;  // empty: standard output
    OutputFormat format = OutputFormat::csv;
    bool has_sweep = false;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Parses "0.6", "-0.2i", "0.6+0.8i", "0.6-0.8i".
std::complex<double> parse_amplitude(const std::string& text);

std::string to_string(InputKind kind);
std::string to_string(SecondAxis axis);

}  // namespace wgqed::cli
