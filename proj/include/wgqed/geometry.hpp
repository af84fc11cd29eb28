#pragma once

// Rectangular hollow waveguide: TM mode catalogue, dispersion and operating regions.
//
// Units throughout the library: angular frequencies in PHz (1e15 rad/s),
// lengths in micrometres, so the speed of light is 0.29979 um*PHz.

#include <string>
#include <vector>

namespace wgqed {

inline constexpr double kLightSpeed = 0.29979;  // um * PHz

struct WaveguideGeometry {
    double a = 0.0;  // length of the cross section (um)
    double b = 0.0;  // width of the cross section (um)
    double c_light = kLightSpeed;

    /// Geometry from the width b and the aspect ratio l = a / b.
    static WaveguideGeometry from_aspect(double b, double aspect, double c_light = kLightSpeed);

    double aspect() const { return a / b; }

    /// Throws InvalidArgument unless a, b and c_light are positive and finite.
    void validate() const;
};

/// One TM_mn propagation channel. Only odd-odd modes couple to an emitter at
/// the centre of the cross section, so even modes are never constructed.
struct TmMode {
    int m = 1;
    int n = 1;
    double cutoff = 0.0;  // omega_j (PHz)
    int rank = 0;         // 1-based position in ascending-cutoff order; 0 if unranked

    /// sin(m pi / 2) * sin(n pi / 2), i.e. +1 or -1 for odd m, n.
    int parity() const;

    std::string label() const;
};

/// omega_mn = c pi sqrt((m/a)^2 + (n/b)^2). Rejects even or non-positive indices.
double cutoff(const WaveguideGeometry& geom, int m, int n);

/// All odd-odd modes with cutoff <= omega_max, ascending by cutoff, ties broken
/// lexicographically on (m, n). Empty if omega_max is below the TM11 cutoff.
std::vector<TmMode> enumerate_modes(const WaveguideGeometry& geom, double omega_max);

/// The `count` lowest odd-odd modes.
std::vector<TmMode> lowest_modes(const WaveguideGeometry& geom, int count);

/// omega_{j,k} = sqrt(omega_j^2 + k^2).
double dispersion(const TmMode& mode, double k);

/// k_j = sqrt(omega^2 - omega_j^2); DomainError for an evanescent mode (omega < cutoff).
double wavenumber(const TmMode& mode, double omega);

/// rho_j = omega / sqrt(omega^2 - omega_j^2); DomainError unless omega > cutoff.
double state_density(const TmMode& mode, double omega);

/// Width b_j at which mode (m, n) has cutoff omega_in for a fixed aspect ratio l.
double critical_size(double omega_in, double aspect, int m, int n, double c_light = kLightSpeed);

enum class RegionKind { cutoff, single_mode, multi_mode, boundary };

struct Region {
    RegionKind kind = RegionKind::cutoff;
    int j_max = 0;          // number of propagating channels (omega_{j_max} <= omega_in)
    int boundary_rank = 0;  // rank of the coincident cutoff when kind == boundary
};

/// Operating region for an input energy. A cutoff within `guard` (relative) of
/// omega_in yields RegionKind::boundary; guard = 0 means exact equality only.
Region classify_region(const WaveguideGeometry& geom, double omega_in, double guard = 0.0);

std::string to_string(RegionKind kind);

}  // namespace wgqed
