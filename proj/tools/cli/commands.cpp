#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "wgqed/conditions.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/scattering.hpp"

namespace wgqed::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void describe_run(Table& t, const RunConfig& cfg, const std::string& command) {
    t.meta("command", command);
    t.meta("units", "frequency PHz, length um");
    t.meta("geometry", "a=" + format_number(cfg.geometry.a) + " b=" + format_number(cfg.geometry.b) +
                           " c=" + format_number(cfg.geometry.c_light));
}

void describe_emitter(Table& t, const RunConfig& cfg) {
    const auto& em = cfg.emitter;
    t.meta("emitter", "omega1=" + format_number(em.omega1) + " omega2=" + format_number(em.omega2) +
                          " lambda1=" + format_number(em.lambda1) + " lambda2=" + format_number(em.lambda2));
    t.meta("variant", to_string(em.variant()));
    t.meta("red_shift", cfg.self.include_red_shift ? "true" : "false");
}

void describe_input(Table& t, const InputConfig& in) {
    std::string text = to_string(in.kind);
    if (in.kind == InputKind::single) text += " mode=" + std::to_string(in.mode);
    if (!in.amplitudes.empty()) {
        text += " amplitudes=";
        for (std::size_t j = 0; j < in.amplitudes.size(); ++j) {
            text += (j ? ";" : "") + format_number(in.amplitudes[j].real()) + (in.amplitudes[j].imag() < 0 ? "" : "+") +
                    format_number(in.amplitudes[j].imag()) + "i";
        }
    }
    t.meta("input", text);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) out[p] = p == n - 1 ? hi : lo + (hi - lo) * p / (n - 1);
    return out;
}

std::string region_name(const Region& region) { return to_string(region.kind); }

struct Point {
    bool skipped = false;
    std::string warning;
    Region region;
    std::string status = "ok";
    ScatteringResult res;
};

Point evaluate(const RunConfig& cfg, const EmitterParams& em, double omega) {
    Point pt;
    const auto& geom = cfg.geometry;
    pt.region = classify_region(geom, omega);
    const int j_max = pt.region.j_max;
    if (pt.region.kind == RegionKind::cutoff) {
        pt.status = "cutoff";
        return pt;
    }
    const auto& in = cfg.input;
    try {
        InputState state;
        switch (in.kind) {
            case InputKind::single:
                if (in.mode > j_max) {
                    pt.status = "closed_input";
                    return pt;
                }
                state = make_single_mode(geom, omega, in.mode);
                break;
            case InputKind::css:
                state = make_css(geom, omega);
                break;
            case InputKind::dark: {
                if (j_max < 2) {
                    pt.status = "no_dark_state";
                    return pt;
                }
                const std::size_t n = std::min(in.amplitudes.size(), static_cast<std::size_t>(j_max - 1));
                state = make_dark(geom, omega, std::span(in.amplitudes.data(), n));
                break;
            }
            case InputKind::custom:
                if (static_cast<int>(in.amplitudes.size()) > j_max) {
                    pt.status = "closed_input";
                    return pt;
                }
                state = make_custom(geom, omega, in.amplitudes, in.normalize);
                break;
        }
        pt.res = scatter(em, geom, state, cfg.self);
        if (pt.res.resonance != CutoffResonance::none) pt.status = "cutoff_resonance";
    } catch (const BoundaryError& e) {
        pt.skipped = true;
        pt.warning = "skipped omega_in = " + format_number(omega) + ": " + e.what();
    } catch (const SingularResolvent&) {
        pt.status = "singular";
    }
    return pt;
}

bool usable(const Point& pt) { return !pt.skipped && (pt.status == "ok" || pt.status == "cutoff_resonance"); }

// Marks, within one row, the grid point nearest each sign change of value(p).
std::vector<int> mark_crossings(const std::vector<Point>& row, const std::vector<double>& value, double tol) {
    std::vector<int> marks(row.size(), 0);
    for (std::size_t p = 0; p < row.size(); ++p) {
        if (row[p].status == "ok" && !row[p].skipped && std::abs(value[p]) < tol) marks[p] = 1;
    }
    for (std::size_t p = 0; p + 1 < row.size(); ++p) {
        const Point& a = row[p];
        const Point& b = row[p + 1];
        if (a.skipped || b.skipped || a.status != "ok" || b.status != "ok") continue;
        if (a.region.j_max != b.region.j_max) continue;  // a cutoff between them
        if ((value[p] < 0.0) == (value[p + 1] < 0.0)) continue;
        marks[std::abs(value[p]) <= std::abs(value[p + 1]) ? p : p + 1] = 1;
    }
    return marks;
}

Window conditions_window(const RunConfig& cfg) {
    if (cfg.sweep.window) return channel_window(cfg.geometry, *cfg.sweep.window);
    if (cfg.has_sweep) return {cfg.sweep.omega_min, cfg.sweep.omega_max};
    return channel_window(cfg.geometry, 1);
}

double rel_err(double analytic, double oracle) {
    const double scale = std::max(std::abs(analytic), std::abs(oracle));
    return scale == 0.0 ? 0.0 : std::abs(analytic - oracle) / scale;
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
    const auto& sw = cfg.sweep;
    if (sw.window) {
        const Window w = channel_window(cfg.geometry, *sw.window);
        std::vector<double> out(static_cast<std::size_t>(sw.points));
        for (int p = 0; p < sw.points; ++p) out[p] = w.lo + (w.hi - w.lo) * (p + 1) / (sw.points + 1);
        return out;
    }
    if (!cfg.has_sweep) throw ConfigError(cfg.source, 0, "sweep", "this command needs a [sweep] section");
    return linspace(sw.omega_min, sw.omega_max, sw.points);
}

std::vector<double> oracle_grid(const WaveguideGeometry& geom, int n) {
    if (n < 2) throw InvalidArgument("oracle grid needs at least two points");
    const auto modes = lowest_modes(geom, 3);
    const double lo = 1.01 * modes[0].cutoff;
    const double hi = 0.99 * modes[2].cutoff;
    const double gap_lo = 0.99 * modes[1].cutoff;
    const double gap_hi = 1.01 * modes[1].cutoff;
    const double first = gap_lo - lo;
    const double total = first + (hi - gap_hi);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        const double s = total * (p + 0.5) / n;
        out.push_back(s < first ? lo + s : gap_hi + (s - first));
    }
    return out;
}

CommandOutput cmd_modes(const RunConfig& cfg) {
    CommandOutput out;
    Table& t = out.table;
    describe_run(t, cfg, "modes");
    const auto modes = lowest_modes(cfg.geometry, cfg.mode_count + 1);
    t.columns = {"j", "m", "n", "label", "omega_j", "window_lo", "window_hi", "degenerate"};
    for (int j = 0; j < cfg.mode_count; ++j) {
        const auto& m = modes[j];
        const bool tie = modes[j + 1].cutoff == m.cutoff || (j > 0 && modes[j - 1].cutoff == m.cutoff);
        t.rows.push_back({static_cast<long long>(m.rank), static_cast<long long>(m.m), static_cast<long long>(m.n),
                          m.label(), m.cutoff, m.cutoff, modes[j + 1].cutoff, static_cast<long long>(tie)});
    }
    return out;
}

CommandOutput cmd_spectrum(const RunConfig& cfg) {
    cfg.emitter.validate();
    CommandOutput out;
    Table& t = out.table;
    describe_run(t, cfg, "spectrum");
    describe_emitter(t, cfg);
    describe_input(t, cfg.input);

    const auto grid = sweep_grid(cfg);
    std::vector<Point> pts(grid.size());
    parallel_for(grid.size(), cfg.threads, [&](std::size_t p) { pts[p] = evaluate(cfg, cfg.emitter, grid[p]); });

    const int channels_max = classify_region(cfg.geometry, *std::max_element(grid.begin(), grid.end())).j_max;
    t.meta("channels", std::to_string(channels_max));
    t.columns = {"omega_in", "region", "j_max", "status", "R", "T"};
    for (int j = 1; j <= channels_max; ++j) t.columns.push_back("R_" + std::to_string(j));
    for (int j = 1; j <= channels_max; ++j) t.columns.push_back("T_" + std::to_string(j));
    t.columns.push_back("re_f");
    t.columns.push_back("im_f");

    for (std::size_t p = 0; p < grid.size(); ++p) {
        const Point& pt = pts[p];
        if (pt.skipped) {
            out.warnings.push_back(pt.warning);
            continue;
        }
        const bool ok = usable(pt);
        std::vector<Cell> row{grid[p], region_name(pt.region), static_cast<long long>(pt.region.j_max), pt.status,
                              ok ? pt.res.R : kNaN, ok ? pt.res.T : kNaN};
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < channels_max; ++j) {
                const auto& v = pass == 0 ? pt.res.reflect : pt.res.transmit;
                row.emplace_back(ok && j < static_cast<int>(v.size()) ? v[j] : kNaN);
            }
        }
        row.emplace_back(ok ? pt.res.f.real() : kNaN);
        row.emplace_back(ok ? pt.res.f.imag() : kNaN);
        t.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput cmd_sweep2d(const RunConfig& cfg) {
    const auto& sw = cfg.sweep;
    if (sw.axis2 == SecondAxis::none) throw ConfigError(cfg.source, 0, "sweep.axis2", "sweep2d needs a second axis");
    CommandOutput out;
    Table& t = out.table;
    describe_run(t, cfg, "sweep2d");
    describe_emitter(t, cfg);
    describe_input(t, cfg.input);
    t.meta("locus_tolerance", cfg.locus_tolerance);

    const auto grid = sweep_grid(cfg);
    const auto axis = linspace(sw.axis2_min, sw.axis2_max, sw.axis2_points);
    const std::size_t nx = grid.size();
    std::vector<Point> pts(nx * axis.size());
    parallel_for(pts.size(), cfg.threads, [&](std::size_t idx) {
        EmitterParams em = cfg.emitter;
        (sw.axis2 == SecondAxis::omega1 ? em.omega1 : em.lambda2) = axis[idx / nx];
        pts[idx] = evaluate(cfg, em, grid[idx % nx]);
    });

    const std::string axis_name = to_string(sw.axis2);
    t.columns = {"omega_in", axis_name, "status", "R", "T", "re_f", "im_f", "eit_locus", "fano_locus"};
    for (std::size_t y = 0; y < axis.size(); ++y) {
        const std::vector<Point> row(pts.begin() + y * nx, pts.begin() + (y + 1) * nx);
        std::vector<double> re(nx, kNaN);
        std::vector<double> im(nx, kNaN);
        for (std::size_t x = 0; x < nx; ++x) {
            if (row[x].status == "ok" && !row[x].skipped) {
                re[x] = row[x].res.f.real();
                im[x] = row[x].res.f.imag();
            }
        }
        const auto eit = mark_crossings(row, im, cfg.locus_tolerance);
        const auto fano = mark_crossings(row, re, cfg.locus_tolerance);
        for (std::size_t x = 0; x < nx; ++x) {
            const Point& pt = row[x];
            if (pt.skipped) {
                out.warnings.push_back(pt.warning);
                continue;
            }
            const bool ok = usable(pt);
            t.rows.push_back({grid[x], axis[y], pt.status, ok ? pt.res.R : kNaN, ok ? pt.res.T : kNaN, re[x], im[x],
                              static_cast<long long>(eit[x]), static_cast<long long>(fano[x])});
        }
    }
    return out;
}

CommandOutput cmd_cutoff_map(const RunConfig& cfg) {
    const auto& cm = cfg.cutoff_map;
    CommandOutput out;
    Table& t = out.table;
    describe_run(t, cfg, "cutoff-map");
    const double aspect = cfg.geometry.aspect();
    const double c = cfg.geometry.c_light;
    t.meta("aspect", aspect);
    t.meta("reference_omega", cm.reference_omega);
    t.meta("spacing", cm.log_spacing ? "log" : "linear");

    // Mode order does not depend on b at fixed aspect ratio.
    const auto modes = lowest_modes(WaveguideGeometry::from_aspect(1.0, aspect, c), cm.modes);
    for (const auto& m : modes) {
        t.meta("critical_b_" + m.label(), critical_size(cm.reference_omega, aspect, m.m, m.n, c));
    }

    std::vector<double> bs;
    if (cm.log_spacing) {
        for (double x : linspace(std::log(cm.b_min), std::log(cm.b_max), cm.points)) bs.push_back(std::exp(x));
        bs.front() = cm.b_min;
        bs.back() = cm.b_max;
    } else {
        bs = linspace(cm.b_min, cm.b_max, cm.points);
    }

    t.columns = {"b"};
    for (const auto& m : modes) t.columns.push_back("omega_" + m.label());
    t.columns.push_back("region");
    t.columns.push_back("j_max");
    for (double b : bs) {
        const auto geom = WaveguideGeometry::from_aspect(b, aspect, c);
        std::vector<Cell> row{b};
        for (const auto& m : modes) row.emplace_back(cutoff(geom, m.m, m.n));
        const Region region = classify_region(geom, cm.reference_omega);
        row.emplace_back(region_name(region));
        row.emplace_back(static_cast<long long>(region.j_max));
        t.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput cmd_conditions(const RunConfig& cfg) {
    cfg.emitter.validate();
    CommandOutput out;
    Table& t = out.table;
    describe_run(t, cfg, "conditions");
    describe_emitter(t, cfg);

    const Window window = conditions_window(cfg);
    if (window.lo < lowest_modes(cfg.geometry, 1).front().cutoff) {
        throw DomainError("conditions window (" + format_number(window.lo) + ", " + format_number(window.hi) +
                          ") reaches below the TM11 cutoff");
    }
    RootScanOptions opts;
    opts.grid_points = cfg.root_grid;
    opts.self = cfg.self;
    const EmitterParams& em = cfg.emitter;
    const ConditionReport rep = analyze_conditions(em, cfg.geometry, window, opts);

    const std::string regime = to_string(rep.regime);
    t.meta("window", format_number(window.lo) + " " + format_number(window.hi));
    t.meta("regime", regime);

    std::optional<SpectrumFeatures> features;
    try {
        features = spectrum_features(em, cfg.geometry, window, opts);
    } catch (const BoundaryError&) {
        // A cutoff inside the window: the CSS spectrum is not continuous there.
    }
    if (features) {
        t.meta("css_peaks_above_0.999", std::to_string(features->peaks_above(0.999)));
        t.meta("css_valleys_below_1e-6", std::to_string(features->valleys_below(1e-6)));
    }

    t.columns = {"kind", "omega", "re_f", "im_f", "residual", "R_css", "transition", "blueshift"};
    auto& mirror = out.mirror;
    mirror["regime"] = regime;
    mirror["variant"] = to_string(em.variant());
    mirror["window"] = {window.lo, window.hi};
    mirror["eit"] = nlohmann::ordered_json::array();
    mirror["fano"] = nlohmann::ordered_json::array();

    std::ostringstream text;
    text << "regime: " << regime << "\nwindow: (" << format_number(window.lo) << ", " << format_number(window.hi) << ")\n";
    if (rep.regime == Regime::unclassified) {
        text << "warning: levels outside the single-mode analysis; regime unclassified\n";
        out.warnings.push_back("regime unclassified");
    }

    if (rep.eit) {
        const complex f = f_eval(em, cfg.geometry, *rep.eit, cfg.self).f;
        const double r = closed_form_R(em, cfg.geometry, *rep.eit, ClosedFormKind::css, cfg.self);
        t.rows.push_back({std::string("eit"), *rep.eit, f.real(), f.imag(), rep.eit_residual.front(), r,
                          std::string(""), kNaN});
        mirror["eit"].push_back({{"omega", *rep.eit}, {"abs_im_f", rep.eit_residual.front()}, {"R_css", r}});
        text << "EIT root: " << format_number(*rep.eit) << "  |Im f| = " << format_number(rep.eit_residual.front())
             << "  R = " << format_number(r) << '\n';
    } else {
        text << "EIT root: none in window\n";
    }

    for (std::size_t k = 0; k < rep.fano.size(); ++k) {
        const double root = rep.fano[k];
        const complex f = f_eval(em, cfg.geometry, root, cfg.self).f;
        std::string level;
        double shift = kNaN;
        for (int i = 1; i <= 2; ++i) {
            const auto& s = rep.shift[i - 1];
            if (s && std::abs(em.omega(i) + *s - root) <= 1e-12 * root) {
                level = std::to_string(i);
                shift = *s;
                break;
            }
        }
        t.rows.push_back({std::string("fano"), root, f.real(), f.imag(), rep.fano_residual[k], rep.fano_reflectivity[k],
                          level, shift});
        nlohmann::ordered_json entry{{"omega", root}, {"abs_re_f", rep.fano_residual[k]}, {"R_css", rep.fano_reflectivity[k]}};
        entry["transition"] = level.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(std::stoi(level));
        entry["blueshift"] = std::isfinite(shift) ? nlohmann::ordered_json(shift) : nlohmann::ordered_json();
        mirror["fano"].push_back(entry);
        text << "Fano root: " << format_number(root) << "  |Re f| = " << format_number(rep.fano_residual[k])
             << "  R = " << format_number(rep.fano_reflectivity[k]);
        if (!level.empty()) text << "  level " << level << " blueshift " << format_number(shift);
        text << '\n';
    }
    if (rep.fano.empty()) text << "Fano roots: none in window\n";
    if (features) {
        mirror["css_peaks_above_0.999"] = features->peaks_above(0.999);
        mirror["css_valleys_below_1e-6"] = features->valleys_below(1e-6);
    }
    out.report = text.str();
    return out;
}

CommandOutput cmd_verify(const RunConfig& cfg, double tolerance) {
    cfg.emitter.validate();
    CommandOutput out;
    Table& t = out.table;
    describe_run(t, cfg, "verify");
    describe_emitter(t, cfg);
    t.meta("tolerance", tolerance);

    const int n = cfg.has_sweep ? cfg.sweep.points : 50;
    const auto grid = oracle_grid(cfg.geometry, n);
    const auto modes = lowest_modes(cfg.geometry, 3);
    struct Row {
        double shift = 0.0, shift_oracle = 0.0, decay = 0.0, decay_oracle = 0.0;
    };
    const std::size_t per_energy = modes.size() * 2;
    std::vector<Row> rows(grid.size() * per_energy);
    parallel_for(rows.size(), cfg.threads, [&](std::size_t idx) {
        const double e = grid[idx / per_energy];
        const auto& mode = modes[(idx % per_energy) / 2];
        const int transition = static_cast<int>(idx % 2) + 1;
        const auto h = h_numeric_oracle(cfg.emitter, transition, mode, e);
        rows[idx] = {lamb_shift(cfg.emitter, transition, mode, e, true), h.real(),
                     decay_rate(cfg.emitter, transition, mode, e), -h.imag()};
    });

    t.columns = {"omega_in", "mode", "transition", "shift", "shift_oracle", "shift_rel_err",
                 "decay", "decay_oracle", "decay_rel_err", "pass"};
    double worst = 0.0;
    int failures = 0;
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        const Row& r = rows[idx];
        const double es = rel_err(r.shift, r.shift_oracle);
        const double ed = rel_err(r.decay, r.decay_oracle);
        const bool pass = es < tolerance && ed < tolerance;
        worst = std::max({worst, es, ed});
        if (!pass) ++failures;
        t.rows.push_back({grid[idx / per_energy], modes[(idx % per_energy) / 2].label(),
                          static_cast<long long>(idx % 2 + 1), r.shift, r.shift_oracle, es, r.decay, r.decay_oracle, ed,
                          static_cast<long long>(pass)});
    }
    std::ostringstream text;
    text << "oracle comparisons: " << rows.size() << ", failures: " << failures
         << ", worst relative error: " << format_number(worst) << '\n';
    out.report = text.str();
    out.exit_code = failures ? 4 : 0;
    return out;
}

}  // namespace wgqed::cli
