#include "wgqed/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "wgqed/errors.hpp"
#include "wgqed/scattering.hpp"

namespace wgqed {

namespace {

// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double f_lo,
              double rel_tol) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::abs(mid)) return mid;
        const double f_mid = fn(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Level {
    int transition;
    double omega;
};

std::vector<Level> active_levels(const EmitterParams& em) {
    if (em.variant() == EmitterVariant::two_level) {
        const int a = em.active_transition();
        return {{a, em.omega(a)}};
    }
    return {{1, em.omega1}, {2, em.omega2}};
}

}  // namespace

Window channel_window(const WaveguideGeometry& geom, int j) {
    if (j < 1) throw InvalidArgument("channel window index must be >= 1");
    const auto modes = lowest_modes(geom, j + 1);
    return {modes[j - 1].cutoff, modes[j].cutoff};
}

std::optional<double> eit_root(const EmitterParams& em, std::optional<Window> window) {
    em.validate();
    if (em.variant() != EmitterVariant::generic || em.lambda1 == 0.0 || em.lambda2 == 0.0) {
        return std::nullopt;
    }
    const double s1 = em.lambda1 * em.lambda1 * em.omega1 * em.omega1;
    const double s2 = em.lambda2 * em.lambda2 * em.omega2 * em.omega2;
    const double root = (s1 * em.omega2 + s2 * em.omega1) / (s1 + s2);
    if (window && !window->contains(root)) return std::nullopt;
    return root;
}

std::vector<double> fano_roots(const EmitterParams& em, const WaveguideGeometry& geom, Window window,
                               const RootScanOptions& opts) {
    if (!(window.hi > window.lo) || !(window.lo > 0.0)) throw InvalidArgument("invalid root window");
    if (opts.grid_points < 2) throw InvalidArgument("root scan needs at least two grid points");

    const double lo = window.lo * (1.0 + opts.edge_margin);
    const double hi = window.hi * (1.0 - opts.edge_margin);
    std::vector<double> grid;
    grid.reserve(opts.grid_points + 6);
    for (int p = 0; p < opts.grid_points; ++p) {
        grid.push_back(lo + (hi - lo) * p / (opts.grid_points - 1));
    }
    for (const auto& level : active_levels(em)) {
        const double width = 5.0 * std::pow(em.lambda(level.transition), 2) * level.omega;
        for (double seed : {level.omega - width, level.omega, level.omega + width}) {
            if (seed > lo && seed < hi) grid.push_back(seed);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto re_f = [&](double e) { return f_eval(em, geom, e, opts.self).f.real(); };

    std::vector<double> xs;
    std::vector<double> ys;
    for (double e : grid) {
        try {
            ys.push_back(re_f(e));
            xs.push_back(e);
        } catch (const BoundaryError&) {
            // Cutoff inside the scan: Re f jumps there, so the point is dropped.
        }
    }

    std::vector<double> roots;
    for (std::size_t p = 0; p + 1 < xs.size(); ++p) {
        if (ys[p] == 0.0) {
            roots.push_back(xs[p]);
            continue;
        }
        if ((ys[p] < 0.0) == (ys[p + 1] < 0.0) || ys[p + 1] == 0.0) continue;
        try {
            roots.push_back(bisect(re_f, xs[p], xs[p + 1], ys[p], opts.rel_tol));
        } catch (const BoundaryError&) {
            // Sign change caused by a cutoff discontinuity, not a root.
        }
    }
    if (!xs.empty() && ys.back() == 0.0) roots.push_back(xs.back());
    return roots;
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::i: return "i";
        case Regime::ii: return "ii";
        case Regime::iii: return "iii";
        case Regime::iv: return "iv";
        case Regime::unclassified: return "unclassified";
    }
    return "unclassified";
}

Regime classify_regime(const EmitterParams& em, const WaveguideGeometry& geom) {
    em.validate();
    const Window w = channel_window(geom, 1);
    int below = 0;
    int inside = 0;
    const auto levels = active_levels(em);
    for (const auto& level : levels) {
        if (level.omega < w.lo) {
            ++below;
        } else if (w.contains(level.omega)) {
            ++inside;
        } else {
            return Regime::unclassified;
        }
    }
    if (inside == 0) return Regime::i;
    const bool single_level = levels.size() == 1 || em.variant() == EmitterVariant::degenerate;
    if (single_level) return Regime::iv;
    return below == 1 ? Regime::ii : Regime::iii;
}

std::optional<double> blueshift(const EmitterParams& em, const WaveguideGeometry& geom, int transition,
                                Window window, const RootScanOptions& opts) {
    if (em.lambda(transition) == 0.0) return std::nullopt;
    const auto roots = fano_roots(em, geom, window, opts);
    if (roots.empty()) return std::nullopt;
    const double level = em.omega(transition);

    std::vector<double> inside;
    for (const auto& l : active_levels(em)) {
        if (window.contains(l.omega)) inside.push_back(l.omega);
    }
    std::sort(inside.begin(), inside.end());
    const auto pos = std::find(inside.begin(), inside.end(), level);
    if (pos != inside.end() && inside.size() == roots.size()) {
        return roots[static_cast<std::size_t>(pos - inside.begin())] - level;
    }
    const auto nearest = std::min_element(roots.begin(), roots.end(), [&](double x, double y) {
        return std::abs(x - level) < std::abs(y - level);
    });
    return *nearest - level;
}

std::vector<Extremum> refine_extrema(const std::function<double(double)>& fn,
                                     std::span<const double> grid) {
    std::vector<double> y(grid.size());
    std::transform(grid.begin(), grid.end(), y.begin(), fn);

    std::vector<Extremum> out;
    for (std::size_t p = 1; p + 1 < grid.size(); ++p) {
        const bool is_max = y[p] > y[p - 1] && y[p] >= y[p + 1];
        const bool is_min = y[p] < y[p - 1] && y[p] <= y[p + 1];
        if (!is_max && !is_min) continue;
        const double sign = is_max ? -1.0 : 1.0;
        auto objective = [&](double x) { return sign * fn(x); };
        std::uintmax_t iterations = 200;
        const auto [x, v] = boost::math::tools::brent_find_minima(
            objective, grid[p - 1], grid[p + 1], std::numeric_limits<double>::digits / 2, iterations);
        Extremum e;
        e.maximum = is_max;
        // Brent never does worse than the grid point it started next to.
        if (sign * v <= sign * y[p]) {
            e.x = x;
            e.value = sign * v;
        } else {
            e.x = grid[p];
            e.value = y[p];
        }
        out.push_back(e);
    }
    return out;
}

int SpectrumFeatures::peaks_above(double threshold) const {
    return static_cast<int>(std::count_if(extrema.begin(), extrema.end(), [&](const Extremum& e) {
        return e.maximum && e.value > threshold;
    }));
}

int SpectrumFeatures::valleys_below(double threshold) const {
    return static_cast<int>(std::count_if(extrema.begin(), extrema.end(), [&](const Extremum& e) {
        return !e.maximum && e.value < threshold;
    }));
}

SpectrumFeatures spectrum_features(const EmitterParams& em, const WaveguideGeometry& geom,
                                   Window window, const RootScanOptions& opts) {
    if (!(window.hi > window.lo) || !(window.lo > 0.0)) throw InvalidArgument("invalid spectrum window");
    if (opts.grid_points < 3) throw InvalidArgument("spectrum scan needs at least three grid points");
    const double lo = window.lo * (1.0 + opts.edge_margin);
    const double hi = window.hi * (1.0 - opts.edge_margin);

    SpectrumFeatures out;
    out.grid.resize(static_cast<std::size_t>(opts.grid_points));
    for (int p = 0; p < opts.grid_points; ++p) out.grid[p] = lo + (hi - lo) * p / (opts.grid_points - 1);

    auto reflect = [&](double e) { return closed_form_R(em, geom, e, ClosedFormKind::css, opts.self); };
    out.values.resize(out.grid.size());
    std::transform(out.grid.begin(), out.grid.end(), out.values.begin(), reflect);
    out.monotone_decreasing = std::adjacent_find(out.values.begin(), out.values.end(),
                                                 std::less<double>()) == out.values.end();
    out.extrema = refine_extrema(reflect, out.grid);
    return out;
}

ConditionReport analyze_conditions(const EmitterParams& em, const WaveguideGeometry& geom,
                                   Window window, const RootScanOptions& opts) {
    ConditionReport report;
    report.window = window;
    report.regime = classify_regime(em, geom);
    report.eit = eit_root(em, window);
    if (report.eit) {
        report.eit_residual.push_back(std::abs(f_eval(em, geom, *report.eit, opts.self).f.imag()));
    }
    report.fano = fano_roots(em, geom, window, opts);
    for (double root : report.fano) {
        const complex f = f_eval(em, geom, root, opts.self).f;
        report.fano_residual.push_back(std::abs(f.real()));
        report.fano_reflectivity.push_back(f.imag() * f.imag() / std::norm(f));
    }
    for (int i = 1; i <= 2; ++i) report.shift[i - 1] = blueshift(em, geom, i, window, opts);
    return report;
}

}  // namespace wgqed
