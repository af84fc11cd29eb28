// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/table.hpp"
#include "wgqed/conditions.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/scattering.hpp"

namespace fs = std::filesystem;
using namespace wgqed;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const WaveguideGeometry kGuide = WaveguideGeometry::from_aspect(1.2, 1.5);

std::string fmt(double x) { return cli::format_number(x); }

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// The open single-mode or multi-mode window sampled at n interior points.
std::vector<double> window_grid(const Window& w, int n) {
    std::vector<double> out;
    for (int p = 0; p < n; ++p) out.push_back(w.lo + (w.hi - w.lo) * (p + 1) / (n + 1));
    return out;
}

double pipeline_R(const EmitterParams& em, const InputState& in) { return scatter(em, kGuide, in).R; }

Outcome cutoffs() {
    const auto modes = lowest_modes(kGuide, 4);
    const char* expect[] = {"TM11", "TM31", "TM13", "TM51"};
    Outcome o;
    for (int j = 0; j < 4; ++j) o.pass = o.pass && modes[j].label() == expect[j];
    const double e1 = rel(modes[0].cutoff, 0.94);
    const double e2 = rel(modes[1].cutoff, 1.75);
    o.pass = o.pass && e1 < 0.01 && e2 < 0.01;
    o.detail = "omega_1=" + fmt(modes[0].cutoff) + " omega_2=" + fmt(modes[1].cutoff) + " order " + modes[0].label() +
               "," + modes[1].label() + "," + modes[2].label() + "," + modes[3].label();
    return o;
}

Outcome oracle() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> lam(0.01, 0.3);
    std::uniform_real_distribution<double> omg(0.5, 3.0);
    const auto grid = cli::oracle_grid(kGuide, 50);
    const auto modes = lowest_modes(kGuide, 3);
    double worst = 0.0;
    int count = 0;
    Outcome o;
    try {
        for (int draw = 0; draw < 10; ++draw) {
            EmitterParams em;
            em.omega1 = omg(rng);
            em.omega2 = omg(rng);
            em.lambda1 = lam(rng);
            em.lambda2 = lam(rng);
            for (double e : grid) {
                for (const auto& mode : modes) {
                    for (int i = 1; i <= 2; ++i) {
                        const auto h = h_numeric_oracle(em, i, mode, e);
                        worst = std::max({worst, rel(lamb_shift(em, i, mode, e, true), h.real()),
                                          rel(decay_rate(em, i, mode, e), -h.imag())});
                        ++count;
                    }
                }
            }
        }
    } catch (const OracleFailure& e) {
        o.pass = false;
        o.detail = std::string("oracle failed: ") + e.what();
        return o;
    }
    o.pass = worst < 1e-5;
    o.detail = std::to_string(count) + " comparisons, worst relative error " + fmt(worst);
    return o;
}

Outcome unitarity() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double bottom = lowest_modes(kGuide, 1).front().cutoff;
    const double top = lowest_modes(kGuide, 6).back().cutoff;
    double worst = 0.0;
    int done = 0;
    int kinds[4] = {0, 0, 0, 0};
    while (done < 10000) {
        EmitterParams em{0.5 + 3.0 * u(rng), 0.5 + 3.0 * u(rng), 0.3 * u(rng), 0.3 * u(rng)};
        const double r = u(rng);
        if (r < 0.1) em.omega2 = em.omega1;
        else if (r < 0.2) em.lambda2 = 0.0;
        const double e = bottom + (top - bottom) * u(rng);
        const int jmax = static_cast<int>(channels(kGuide, e).size());
        int kind = static_cast<int>(4 * u(rng));
        if (kind == 2 && jmax < 2) kind = 3;
        try {
            InputState in;
            if (kind == 0) {
                in = make_single_mode(kGuide, e, 1 + static_cast<int>(jmax * u(rng)));
            } else if (kind == 1) {
                in = make_css(kGuide, e);
            } else if (kind == 2) {
                std::vector<complex> free(jmax - 1);
                for (auto& z : free) z = {u(rng) - 0.5, u(rng) - 0.5};
                in = make_dark(kGuide, e, free);
            } else {
                std::vector<complex> c(jmax);
                for (auto& z : c) z = {u(rng) - 0.5, u(rng) - 0.5};
                in = make_custom(kGuide, e, c, true);
            }
            const auto res = scatter(em, kGuide, in);
            worst = std::max(worst, std::abs(res.R + res.T - 1.0));
            ++kinds[kind];
            ++done;
        } catch (const BoundaryError&) {
        }
    }
    Outcome o;
    o.pass = worst <= 1e-12;
    o.detail = "10000 configurations (single " + std::to_string(kinds[0]) + ", css " + std::to_string(kinds[1]) +
               ", dark " + std::to_string(kinds[2]) + ", custom " + std::to_string(kinds[3]) + "), max |R+T-1| " +
               fmt(worst);
    return o;
}

struct Features {
    bool monotone_decreasing = false;
    int peaks = 0;
    int valleys = 0;
    double min_value = 1.0;
};

// 2000-point single-mode sweep of the full pipeline (TM11 input), extrema refined.
Features regime_features(const EmitterParams& em) {
    const Window w = channel_window(kGuide, 1);
    const auto grid = window_grid(w, 2000);
    auto reflect = [&](double e) { return pipeline_R(em, make_single_mode(kGuide, e, 1)); };
    Features f;
    std::vector<double> values;
    for (double e : grid) values.push_back(reflect(e));
    f.monotone_decreasing = true;
    for (std::size_t p = 1; p < values.size(); ++p) f.monotone_decreasing = f.monotone_decreasing && values[p] < values[p - 1];
    for (const auto& x : refine_extrema(reflect, grid)) {
        if (x.maximum && x.value > 0.999) ++f.peaks;
        if (!x.maximum && x.value < 1e-6) ++f.valleys;
        if (!x.maximum) f.min_value = std::min(f.min_value, x.value);
    }
    return f;
}

Outcome regimes() {
    const auto i_a = regime_features({0.7, 0.8, 0.1, 0.1});
    const auto i_b = regime_features({0.8, 0.8, 0.1, 0.1});
    const auto ii = regime_features({0.8, 1.2, 0.1, 0.1});
    const auto iii = regime_features({1.3, 1.1, 0.1, 0.1});
    const auto iv = regime_features({1.2, 1.2, 0.1, 0.1});
    Outcome o;
    o.pass = i_a.monotone_decreasing && i_b.monotone_decreasing && ii.peaks == 1 && iii.peaks == 2 &&
             iii.valleys == 1 && iv.peaks == 1 && iv.valleys == 0;
    std::ostringstream s;
    s << "i: monotone " << (i_a.monotone_decreasing && i_b.monotone_decreasing ? "yes" : "no") << "; ii: " << ii.peaks
      << " peak; iii: " << iii.peaks << " peaks, " << iii.valleys << " valley (min R " << fmt(iii.min_value)
      << "); iv: " << iv.peaks << " peak, " << iv.valleys << " valleys";
    o.detail = s.str();
    return o;
}

Outcome condition_residuals() {
    double eit_im = 0.0;
    double eit_r = 0.0;
    double fano_closed = 0.0;
    double fano_re = 0.0;
    double fano_laws = 0.0;
    int roots = 0;

    struct Case {
        EmitterParams em;
        int window;
    };
    const Case cases[] = {{{1.3, 1.1, 0.1, 0.1}, 1}, {{2.0, 1.8, 0.05, 0.05}, 2}};
    for (const auto& c : cases) {
        const Window w = channel_window(kGuide, c.window);
        const auto rep = analyze_conditions(c.em, kGuide, w);
        if (!rep.eit) return {false, "no EIT root in window " + std::to_string(c.window)};
        eit_im = std::max(eit_im, std::abs(f_eval(c.em, kGuide, *rep.eit).f.imag()));
        eit_r = std::max(eit_r, pipeline_R(c.em, make_single_mode(kGuide, *rep.eit, 1)));
        eit_r = std::max(eit_r, pipeline_R(c.em, make_css(kGuide, *rep.eit)));
        for (double root : rep.fano) {
            ++roots;
            fano_re = std::max(fano_re, std::abs(f_eval(c.em, kGuide, root).f.real()));
            fano_closed = std::max(fano_closed, std::abs(closed_form_R(c.em, kGuide, root, ClosedFormKind::css) - 1.0));
            if (c.window == 2) {
                for (int n = 1; n <= 2; ++n) {
                    const auto laws = single_mode_input_laws(c.em, kGuide, root, n);
                    const double r = pipeline_R(c.em, make_single_mode(kGuide, root, n));
                    fano_laws = std::max(fano_laws, std::abs(r - laws.width[n - 1] / laws.total_width));
                }
            }
        }
        if (rep.fano.size() != 2) return {false, std::to_string(rep.fano.size()) + " Fano roots in window " + std::to_string(c.window)};
    }
    Outcome o;
    o.pass = eit_im < 1e-10 && eit_r < 1e-10 && fano_re < 1e-10 && fano_closed < 1e-9 && fano_laws < 1e-9;
    o.detail = "EIT |Im f| " + fmt(eit_im) + ", R " + fmt(eit_r) + "; " + std::to_string(roots) + " Fano roots: |Re f| " +
               fmt(fano_re) + ", |R_css-1| " + fmt(fano_closed) + ", |R-Lambda_n/Lambda| " + fmt(fano_laws);
    return o;
}

Outcome multimode() {
    const EmitterParams em{2.0, 1.8, 0.05, 0.05};
    const auto grid = window_grid(channel_window(kGuide, 2), 2000);
    double tr_gap = 0.0;
    double css_gap = 0.0;
    double dark = 0.0;
    double peak = -1.0;
    ScatteringResult at_peak;
    for (double e : grid) {
        const auto tm11 = scatter(em, kGuide, make_single_mode(kGuide, e, 1));
        tr_gap = std::max(tr_gap, std::abs(tm11.transmit[1] - tm11.reflect[1]) /
                                      std::max(tm11.reflect[1], std::numeric_limits<double>::min()));
        const auto tm31 = scatter(em, kGuide, make_single_mode(kGuide, e, 2));
        if (tm31.R > peak) {
            peak = tm31.R;
            at_peak = tm31;
        }
        const auto css = make_css(kGuide, e);
        css_gap = std::max(css_gap, std::abs(pipeline_R(em, css) - reflectivity_closed_form(em, kGuide, css)));
        dark = std::max(dark, pipeline_R(em, make_dark(kGuide, e)));
    }
    Outcome o;
    const double eps = std::numeric_limits<double>::epsilon();
    o.pass = tr_gap <= 4 * eps && at_peak.reflect[1] > at_peak.reflect[0] && css_gap < 1e-12 && dark < 1e-12;
    o.detail = "TM11 max |T2-R2|/R2 " + fmt(tr_gap) + "; TM31 peak R1 " + fmt(at_peak.reflect[0]) + " R2 " +
               fmt(at_peak.reflect[1]) + "; CSS closed-form gap " + fmt(css_gap) + "; dark max R " + fmt(dark);
    return o;
}

Outcome reductions() {
    const auto grid = window_grid(channel_window(kGuide, 1), 2000);
    const EmitterParams deg{1.2, 1.2, 0.1, 0.1};
    const EmitterParams near{1.2, 1.2 * (1 + 1e-6), 0.1, 0.1};
    if (deg.variant() != EmitterVariant::degenerate || near.variant() != EmitterVariant::generic) {
        return {false, "variant selection"};
    }
    double gap = 0.0;
    for (double e : grid) {
        const auto in = make_single_mode(kGuide, e, 1);
        gap = std::max(gap, std::abs(pipeline_R(near, in) - pipeline_R(deg, in)));
    }
    const EmitterParams two{1.3, 1.1, 0.1, 0.0};
    const auto f = regime_features(two);
    const bool no_eit = !eit_root(two).has_value();
    Outcome o;
    o.pass = gap < 1e-4 && no_eit && f.valleys == 0 && f.peaks <= 1;
    o.detail = "near-degenerate max |dR| " + fmt(gap) + "; two-level: EIT root " + (no_eit ? "absent" : "present") +
               ", " + std::to_string(f.valleys) + " zero valleys, " + std::to_string(f.peaks) + " unit peak";
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism(const std::string& tool, const fs::path& configs, const fs::path& scratch) {
    if (tool.empty()) return {false, "no tool path given"};
    fs::create_directories(scratch);
    struct Run {
        std::string command;
        std::string config;
    };
    const Run runs[] = {{"modes", "modes.ini"},           {"spectrum", "fig3b_regime_iii.ini"},
                        {"spectrum", "fig5_css.ini"},     {"sweep2d", "fig3a_density.ini"},
                        {"cutoff-map", "fig2_cutoff_map.ini"}, {"conditions", "conditions.ini"},
                        {"verify", "verify.ini"}};
    int files = 0;
    for (const auto& run : runs) {
        std::string first;
        std::string first_mirror;
        for (int attempt = 0; attempt < 2; ++attempt) {
            const fs::path out = scratch / (run.command + "_" + std::to_string(attempt) + ".csv");
            const std::string cmd = "\"" + tool + "\" " + run.command + " --config \"" + (configs / run.config).string() +
                                    "\" --out \"" + out.string() + "\" > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) return {false, run.command + " exited with an error"};
            const std::string data = slurp(out);
            fs::path mirror = out;
            mirror.replace_extension(".json");
            const std::string json = run.command == "conditions" ? slurp(mirror) : std::string();
            if (attempt == 0) {
                first = data;
                first_mirror = json;
            } else if (data != first || json != first_mirror) {
                return {false, run.command + " output differs between runs"};
            }
        }
        files += run.command == "conditions" ? 2 : 1;
    }
    return {true, std::to_string(files) + " output files byte-identical across two runs of 7 commands"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wgqed acceptance suite"};
    std::string tool;
    std::string configs = "configs";
    std::string scratch = "acceptance_out";
    app.add_option("--tool", tool, "Path to the wgqed executable");
    app.add_option("--configs", configs, "Directory with the example configurations");
    app.add_option("--scratch", scratch, "Directory for temporary outputs");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"cutoff reproduction", cutoffs},
        {"oracle equivalence", oracle},
        {"unitarity", unitarity},
        {"regime reproduction", regimes},
        {"condition residuals", condition_residuals},
        {"multi-mode channel laws", multimode},
        {"degenerate and two-level reductions", reductions},
        {"determinism", [&] { return determinism(tool, configs, scratch); }},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %-36s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
