#pragma once

// Perfect-transmission (Im f = 0) and perfect-reflection (Re f = 0) conditions
// and the classification of single-mode reflectance spectra.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wgqed/emitter.hpp"
#include "wgqed/geometry.hpp"
#include "wgqed/selfenergy.hpp"

namespace wgqed {

struct Window {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x > lo && x < hi; }
};

/// (omega_j, omega_{j+1}): the window in which exactly j channels propagate.
Window channel_window(const WaveguideGeometry& geom, int j);

/// Zero of y(w) = lambda1^2 O1^2 (w - O2) + lambda2^2 O2^2 (w - O1):
///   w* = (lambda1^2 O1^2 O2 + lambda2^2 O2^2 O1) / (lambda1^2 O1^2 + lambda2^2 O2^2).
/// Absent for degenerate, two-level or decoupled emitters, and when outside `window`.
std::optional<double> eit_root(const EmitterParams& em, std::optional<Window> window = {});

struct RootScanOptions {
    int grid_points = 2000;
    double rel_tol = 1e-12;
    /// Scan endpoints are pulled in from the window edges by this relative margin.
    double edge_margin = 1e-7;
    SelfEnergyOptions self{};
};

/// All sign changes of Re f on a uniform scan of the window (augmented with the
/// points O_i and O_i +- 5 lambda_i^2 O_i), refined by bisection. A narrow pair
/// of roots between two scan points is not detected; raise grid_points if needed.
std::vector<double> fano_roots(const EmitterParams& em, const WaveguideGeometry& geom, Window window,
                               const RootScanOptions& opts = {});

enum class Regime { i, ii, iii, iv, unclassified };

std::string to_string(Regime regime);

/// Single-mode-window regime:
///   i    both active levels below omega_1
///   ii   one level below omega_1, the other inside (omega_1, omega_2)
///   iii  both inside, non-degenerate
///   iv   degenerate inside the window (a two-level emitter inside the window also
///        lands here: one reflection peak, no transmission zero)
/// Levels at or above omega_2, or exactly on omega_1, are unclassified.
Regime classify_regime(const EmitterParams& em, const WaveguideGeometry& geom);

/// Fano root associated with level Omega_i minus Omega_i. When the window holds
/// as many roots as in-window levels they are matched in ascending order;
/// otherwise the nearest root is used. Absent if there is no root.
std::optional<double> blueshift(const EmitterParams& em, const WaveguideGeometry& geom, int transition,
                                Window window, const RootScanOptions& opts = {});

struct Extremum {
    double x = 0.0;
    double value = 0.0;
    bool maximum = false;
};

/// Interior local extrema of fn sampled on an ascending grid, each refined by
/// Brent's method inside its neighbouring grid cells.
std::vector<Extremum> refine_extrema(const std::function<double(double)>& fn,
                                     std::span<const double> grid);

struct SpectrumFeatures {
    std::vector<double> grid;
    std::vector<double> values;  // CSS reflectivity at each grid point
    std::vector<Extremum> extrema;
    bool monotone_decreasing = false;

    int peaks_above(double threshold) const;
    int valleys_below(double threshold) const;
};

/// CSS reflectivity Im f^2 / |f|^2 over the window (opts.grid_points points,
/// edges pulled in by opts.edge_margin) and its refined extrema.
SpectrumFeatures spectrum_features(const EmitterParams& em, const WaveguideGeometry& geom,
                                   Window window, const RootScanOptions& opts = {});

struct ConditionReport {
    Window window;
    Regime regime = Regime::unclassified;
    std::optional<double> eit;
    std::vector<double> eit_residual;  // |Im f| at the EIT root
    std::vector<double> fano;
    std::vector<double> fano_residual;  // |Re f| at each Fano root
    std::vector<double> fano_reflectivity;  // Im f^2 / |f|^2 at each Fano root
    std::array<std::optional<double>, 2> shift;  // blueshift of each level
};

ConditionReport analyze_conditions(const EmitterParams& em, const WaveguideGeometry& geom,
                                   Window window, const RootScanOptions& opts = {});

}  // namespace wgqed
