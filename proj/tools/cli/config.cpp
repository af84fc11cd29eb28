#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wgqed/errors.hpp"

namespace wgqed::cli {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"geometry", {"a", "b", "aspect", "c_light"}},
        {"emitter", {"omega1", "omega2", "lambda1", "lambda2", "dipole1", "dipole2"}},
        {"sweep", {"window", "omega_min", "omega_max", "points", "axis2", "axis2_min", "axis2_max", "axis2_points"}},
        {"input", {"kind", "mode", "amplitudes", "normalize"}},
        {"options", {"red_shift", "red_shift_modes", "guard", "threads", "root_grid", "tolerance"}},
        {"modes", {"count"}},
        {"cutoff_map", {"b_min", "b_max", "points", "modes", "reference_omega", "spacing"}},
        {"output", {"path", "format"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Reader {
public:
    Reader(std::istream& in, std::string source) : source_(std::move(source)) {
        std::string raw;
        std::string current;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const std::string text = trim(raw.substr(0, raw.find('#')));
            if (text.empty()) continue;
            if (text.front() == '[') {
                if (text.back() != ']') fail(line, "", "unterminated section header");
                current = trim(text.substr(1, text.size() - 2));
                if (!schema().count(current)) fail(line, current, "unknown section");
                lines_[current] = line;
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string::npos) fail(line, "", "expected 'key = value'");
            const std::string key = trim(text.substr(0, eq));
            const std::string value = trim(text.substr(eq + 1));
            if (current.empty()) fail(line, key, "key outside of any section");
            if (!schema().at(current).count(key)) fail(line, current + "." + key, "unknown key");
            if (value.empty()) fail(line, current + "." + key, "missing value");
            auto& section = sections_[current];
            if (section.count(key)) fail(line, current + "." + key, "duplicate key");
            section[key] = Entry{value, line};
        }
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key);
    }

    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

    [[noreturn]] void fail(int line, const std::string& field, const std::string& what) const {
        throw ConfigError(source_, line, field, what);
    }

    [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const {
        fail(line_of(section, key), section + "." + key, what);
    }

    int line_of(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s != sections_.end()) {
            const auto e = s->second.find(key);
            if (e != s->second.end()) return e->second.line;
        }
        const auto l = lines_.find(section);
        return l == lines_.end() ? 0 : l->second;
    }

    const std::string& raw(const std::string& section, const std::string& key) const {
        return sections_.at(section).at(key).value;
    }

    double number(const std::string& section, const std::string& key, double fallback) const {
        if (!has(section, key)) return fallback;
        const std::string& text = raw(section, key);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            fail(section, key, "'" + text + "' is not a number");
        }
        if (used != text.size() || !std::isfinite(value)) fail(section, key, "'" + text + "' is not a finite number");
        return value;
    }

    int integer(const std::string& section, const std::string& key, int fallback) const {
        if (!has(section, key)) return fallback;
        const std::string& text = raw(section, key);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(text, &used);
        } catch (const std::exception&) {
            fail(section, key, "'" + text + "' is not an integer");
        }
        if (used != text.size()) fail(section, key, "'" + text + "' is not an integer");
        return value;
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        const std::string& text = raw(section, key);
        if (text == "true" || text == "yes" || text == "1") return true;
        if (text == "false" || text == "no" || text == "0") return false;
        fail(section, key, "expected true or false, got '" + text + "'");
    }

    std::string word(const std::string& section, const std::string& key, const std::string& fallback,
                     std::initializer_list<const char*> allowed) const {
        if (!has(section, key)) return fallback;
        const std::string& text = raw(section, key);
        for (const char* option : allowed) {
            if (text == option) return text;
        }
        std::string list;
        for (const char* option : allowed) list += std::string(list.empty() ? "" : ", ") + option;
        fail(section, key, "'" + text + "' is not one of " + list);
    }

private:
    std::string source_;
    std::map<std::string, Section> sections_;
    std::map<std::string, int> lines_;
};

void require(bool ok, const Reader& r, const std::string& section, const std::string& key,
             const std::string& what) {
    if (!ok) r.fail(section, key, what);
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         (field.empty() ? std::string() : field + ": ") + what),
      line_(line),
      field_(field) {}

std::complex<double> parse_amplitude(const std::string& text) {
    std::string s;
    std::copy_if(text.begin(), text.end(), std::back_inserter(s), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    if (s.empty()) throw std::invalid_argument("empty amplitude");
    auto number = [&](const std::string& part) {
        if (part == "" || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument("bad amplitude '" + text + "'");
        return v;
    };
    if (s.back() != 'i') return {number(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t p = s.size(); p-- > 1;) {
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(s)};
    return {number(s.substr(0, split)), number(s.substr(split))};
}

std::string to_string(InputKind kind) {
    switch (kind) {
        case InputKind::single: return "single";
        case InputKind::css: return "css";
        case InputKind::dark: return "dark";
        case InputKind::custom: return "custom";
    }
    return "single";
}

std::string to_string(SecondAxis axis) {
    switch (axis) {
        case SecondAxis::none: return "none";
        case SecondAxis::omega1: return "omega1";
        case SecondAxis::lambda2: return "lambda2";
    }
    return "none";
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    const Reader r(in, source);
    RunConfig cfg;
    cfg.source = source;

    // geometry
    const double b = r.number("geometry", "b", 1.2);
    require(b > 0.0, r, "geometry", "b", "must be positive");
    const double c_light = r.number("geometry", "c_light", kLightSpeed);
    require(c_light > 0.0, r, "geometry", "c_light", "must be positive");
    if (r.has("geometry", "a") && r.has("geometry", "aspect")) {
        r.fail("geometry", "aspect", "give either a or aspect, not both");
    }
    if (r.has("geometry", "a")) {
        const double a = r.number("geometry", "a", 0.0);
        require(a > 0.0, r, "geometry", "a", "must be positive");
        cfg.geometry = WaveguideGeometry{a, b, c_light};
    } else {
        const double aspect = r.number("geometry", "aspect", 1.5);
        require(aspect > 0.0, r, "geometry", "aspect", "must be positive");
        cfg.geometry = WaveguideGeometry::from_aspect(b, aspect, c_light);
    }

    // emitter
    auto& em = cfg.emitter;
    em.omega1 = r.number("emitter", "omega1", em.omega1);
    em.omega2 = r.number("emitter", "omega2", em.omega2);
    require(em.omega1 > 0.0, r, "emitter", "omega1", "must be positive");
    require(em.omega2 > 0.0, r, "emitter", "omega2", "must be positive");
    for (int i = 1; i <= 2; ++i) {
        const std::string lam = "lambda" + std::to_string(i);
        const std::string dip = "dipole" + std::to_string(i);
        double value = i == 1 ? em.lambda1 : em.lambda2;
        if (r.has("emitter", lam) && r.has("emitter", dip)) r.fail("emitter", dip, "give either " + lam + " or " + dip);
        if (r.has("emitter", dip)) {
            const double p = r.number("emitter", dip, 0.0);
            require(p >= 0.0, r, "emitter", dip, "must be non-negative");
            value = lambda_from_dipole(p, cfg.geometry);
        } else {
            value = r.number("emitter", lam, value);
            require(value >= 0.0, r, "emitter", lam, "must be non-negative");
        }
        (i == 1 ? em.lambda1 : em.lambda2) = value;
    }

    // sweep
    auto& sw = cfg.sweep;
    cfg.has_sweep = r.has_section("sweep");
    if (r.has("sweep", "window")) {
        if (r.has("sweep", "omega_min") || r.has("sweep", "omega_max")) {
            r.fail("sweep", "window", "give either window or omega_min/omega_max");
        }
        sw.window = r.integer("sweep", "window", 1);
        require(*sw.window >= 1, r, "sweep", "window", "must be >= 1");
    } else if (cfg.has_sweep) {
        if (!r.has("sweep", "omega_min")) r.fail(r.line_of("sweep", ""), "sweep.omega_min", "missing (or give window)");
        if (!r.has("sweep", "omega_max")) r.fail(r.line_of("sweep", ""), "sweep.omega_max", "missing (or give window)");
        sw.omega_min = r.number("sweep", "omega_min", 0.0);
        sw.omega_max = r.number("sweep", "omega_max", 0.0);
        require(sw.omega_min > 0.0, r, "sweep", "omega_min", "must be positive");
        require(sw.omega_max > sw.omega_min, r, "sweep", "omega_max", "must exceed omega_min");
    }
    sw.points = r.integer("sweep", "points", sw.points);
    require(sw.points >= 2, r, "sweep", "points", "must be at least 2");
    const std::string axis2 = r.word("sweep", "axis2", "none", {"none", "omega1", "lambda2"});
    sw.axis2 = axis2 == "omega1" ? SecondAxis::omega1 : axis2 == "lambda2" ? SecondAxis::lambda2 : SecondAxis::none;
    if (sw.axis2 != SecondAxis::none) {
        for (const char* key : {"axis2_min", "axis2_max"}) {
            if (!r.has("sweep", key)) r.fail(r.line_of("sweep", "axis2"), std::string("sweep.") + key, "required with axis2");
        }
        sw.axis2_min = r.number("sweep", "axis2_min", 0.0);
        sw.axis2_max = r.number("sweep", "axis2_max", 0.0);
        sw.axis2_points = r.integer("sweep", "axis2_points", sw.axis2_points);
        require(sw.axis2_max > sw.axis2_min, r, "sweep", "axis2_max", "must exceed axis2_min");
        require(sw.axis2_points >= 2, r, "sweep", "axis2_points", "must be at least 2");
        if (sw.axis2 == SecondAxis::omega1) require(sw.axis2_min > 0.0, r, "sweep", "axis2_min", "must be positive");
        if (sw.axis2 == SecondAxis::lambda2) require(sw.axis2_min >= 0.0, r, "sweep", "axis2_min", "must be non-negative");
    }

    // input
    auto& input = cfg.input;
    const std::string kind = r.word("input", "kind", "single", {"single", "css", "dark", "custom"});
    input.kind = kind == "css" ? InputKind::css : kind == "dark" ? InputKind::dark
               : kind == "custom" ? InputKind::custom : InputKind::single;
    input.mode = r.integer("input", "mode", 1);
    require(input.mode >= 1, r, "input", "mode", "must be >= 1");
    input.normalize = r.boolean("input", "normalize", false);
    if (r.has("input", "amplitudes")) {
        std::stringstream list(r.raw("input", "amplitudes"));
        std::string item;
        while (std::getline(list, item, ',')) {
            try {
                input.amplitudes.push_back(parse_amplitude(item));
            } catch (const std::exception&) {
                r.fail("input", "amplitudes", "cannot parse amplitude '" + trim(item) + "'");
            }
        }
    }
    if (input.kind == InputKind::custom) {
        require(!input.amplitudes.empty(), r, "input", "kind", "custom input needs amplitudes");
        if (!input.normalize) {
            double norm = 0.0;
            for (const auto& z : input.amplitudes) norm += std::norm(z);
            require(std::abs(norm - 1.0) <= 1e-12, r, "input", "amplitudes",
                    "custom amplitudes must be normalised (or set normalize = true)");
        }
    }

    // options
    cfg.self.include_red_shift = r.boolean("options", "red_shift", false);
    cfg.self.red_shift_modes = r.integer("options", "red_shift_modes", cfg.self.red_shift_modes);
    require(cfg.self.red_shift_modes >= 1, r, "options", "red_shift_modes", "must be >= 1");
    cfg.self.guard = r.number("options", "guard", cfg.self.guard);
    require(cfg.self.guard >= 0.0 && cfg.self.guard < 1e-2, r, "options", "guard", "must lie in [0, 1e-2)");
    cfg.threads = r.integer("options", "threads", 0);
    require(cfg.threads >= 0, r, "options", "threads", "must be >= 0");
    cfg.root_grid = r.integer("options", "root_grid", cfg.root_grid);
    require(cfg.root_grid >= 3, r, "options", "root_grid", "must be >= 3");
    cfg.locus_tolerance = r.number("options", "tolerance", cfg.locus_tolerance);
    require(cfg.locus_tolerance > 0.0, r, "options", "tolerance", "must be positive");

    // modes
    cfg.mode_count = r.integer("modes", "count", cfg.mode_count);
    require(cfg.mode_count >= 1, r, "modes", "count", "must be >= 1");

    // cutoff map
    auto& cm = cfg.cutoff_map;
    cm.b_min = r.number("cutoff_map", "b_min", cm.b_min);
    cm.b_max = r.number("cutoff_map", "b_max", cm.b_max);
    require(cm.b_min > 0.0, r, "cutoff_map", "b_min", "must be positive");
    require(cm.b_max > cm.b_min, r, "cutoff_map", "b_max", "must exceed b_min");
    cm.points = r.integer("cutoff_map", "points", cm.points);
    require(cm.points >= 2, r, "cutoff_map", "points", "must be at least 2");
    cm.modes = r.integer("cutoff_map", "modes", cm.modes);
    require(cm.modes >= 1, r, "cutoff_map", "modes", "must be >= 1");
    cm.reference_omega = r.number("cutoff_map", "reference_omega", cm.reference_omega);
    require(cm.reference_omega > 0.0, r, "cutoff_map", "reference_omega", "must be positive");
    cm.log_spacing = r.word("cutoff_map", "spacing", "linear", {"linear", "log"}) == "log";

    // output
    if (r.has("output", "path")) cfg.output_path = r.raw("output", "path");
    cfg.format = r.word("output", "format", "csv", {"csv", "json"}) == "json" ? OutputFormat::json : OutputFormat::csv;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "", "cannot open config file");
    return parse_config(in, path);
}

}  // namespace wgqed::cli
