#include "wgqed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

void require_odd_positive(int m, int n) {
    if (m < 1 || n < 1 || m % 2 == 0 || n % 2 == 0) {
        throw InvalidArgument("TM mode indices must be positive odd integers, got (" +
                              std::to_string(m) + ", " + std::to_string(n) + ")");
    }
}

}  // namespace

WaveguideGeometry WaveguideGeometry::from_aspect(double b, double aspect, double c_light) {
    WaveguideGeometry geom{aspect * b, b, c_light};
    geom.validate();
    return geom;
}

void WaveguideGeometry::validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(a) || !positive(b)) {
        throw InvalidArgument("waveguide cross section must have a > 0 and b > 0");
    }
    if (!positive(c_light)) {
        throw InvalidArgument("speed of light must be positive");
    }
}

int TmMode::parity() const {
    auto sine_sign = [](int k) { return ((k - 1) / 2) % 2 == 0 ? 1 : -1; };
    return sine_sign(m) * sine_sign(n);
}

std::string TmMode::label() const {
    return "TM" + std::to_string(m) + std::to_string(n);
}

double cutoff(const WaveguideGeometry& geom, int m, int n) {
    require_odd_positive(m, n);
    geom.validate();
    const double kx = m / geom.a;
    const double ky = n / geom.b;
    return geom.c_light * std::numbers::pi * std::sqrt(kx * kx + ky * ky);
}

std::vector<TmMode> enumerate_modes(const WaveguideGeometry& geom, double omega_max) {
    geom.validate();
    std::vector<TmMode> modes;
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) return modes;

    // cutoff >= c pi m / a and >= c pi n / b bound the search box.
    const double scale = geom.c_light * std::numbers::pi;
    for (int m = 1; scale * m / geom.a <= omega_max; m += 2) {
        for (int n = 1; scale * n / geom.b <= omega_max; n += 2) {
            const double w = cutoff(geom, m, n);
            if (w <= omega_max) modes.push_back({m, n, w, 0});
        }
    }
    std::sort(modes.begin(), modes.end(), [](const TmMode& x, const TmMode& y) {
        return std::tie(x.cutoff, x.m, x.n) < std::tie(y.cutoff, y.m, y.n);
    });
    for (std::size_t j = 0; j < modes.size(); ++j) modes[j].rank = static_cast<int>(j) + 1;
    return modes;
}

std::vector<TmMode> lowest_modes(const WaveguideGeometry& geom, int count) {
    if (count <= 0) return {};
    double omega = cutoff(geom, 1, 1);
    std::vector<TmMode> modes = enumerate_modes(geom, omega);
    while (static_cast<int>(modes.size()) < count) {
        omega *= 1.5;
        modes = enumerate_modes(geom, omega);
    }
    // The box search at omega is exhaustive, so the first `count` entries are the lowest.
    modes.resize(count);
    return modes;
}

double dispersion(const TmMode& mode, double k) {
    return std::hypot(mode.cutoff, k);
}

double wavenumber(const TmMode& mode, double omega) {
    if (omega < mode.cutoff) {
        throw DomainError(mode.label() + " is evanescent at omega = " + std::to_string(omega));
    }
    return std::sqrt((omega - mode.cutoff) * (omega + mode.cutoff));
}

double state_density(const TmMode& mode, double omega) {
    if (!(omega > mode.cutoff)) {
        throw DomainError("state density of " + mode.label() +
                          " diverges or is undefined at omega = " + std::to_string(omega));
    }
    return omega / wavenumber(mode, omega);
}

double critical_size(double omega_in, double aspect, int m, int n, double c_light) {
    require_odd_positive(m, n);
    if (!(omega_in > 0.0) || !(aspect > 0.0)) {
        throw InvalidArgument("critical_size needs omega_in > 0 and aspect > 0");
    }
    const double mm = m / aspect;
    return c_light * std::numbers::pi / omega_in * std::sqrt(mm * mm + double(n) * n);
}

Region classify_region(const WaveguideGeometry& geom, double omega_in, double guard) {
    if (!(omega_in > 0.0)) throw InvalidArgument("classify_region needs omega_in > 0");
    Region region;
    const auto modes = enumerate_modes(geom, omega_in * (1.0 + guard));
    for (const auto& mode : modes) {
        if (std::abs(omega_in - mode.cutoff) <= guard * mode.cutoff) {
            region.kind = RegionKind::boundary;
            region.boundary_rank = mode.rank;
        }
        if (mode.cutoff <= omega_in) region.j_max = mode.rank;
    }
    if (region.kind == RegionKind::boundary) return region;
    if (region.j_max == 0) {
        region.kind = RegionKind::cutoff;
    } else if (region.j_max == 1) {
        region.kind = RegionKind::single_mode;
    } else {
        region.kind = RegionKind::multi_mode;
    }
    return region;
}

std::string to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::cutoff: return "cutoff";
        case RegionKind::single_mode: return "single_mode";
        case RegionKind::multi_mode: return "multi_mode";
        case RegionKind::boundary: return "boundary";
    }
    return "unknown";
}

}  // namespace wgqed
