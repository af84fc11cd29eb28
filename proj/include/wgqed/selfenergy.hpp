#pragma once

// Emitter self-energy h^(i)(E) = Delta^(i)(E) - i Gamma^(i)(E) and the resolvent
// function f(E) that sits in the denominator of every scattering amplitude.

#include <array>
#include <complex>
#include <vector>

#include "wgqed/emitter.hpp"
#include "wgqed/geometry.hpp"

namespace wgqed {

using complex = std::complex<double>;

/// Relative distance to a cutoff inside which evaluations are refused.
inline constexpr double kCutoffGuard = 1e-9;

struct SelfEnergyOptions {
    /// Keep the (red) Lamb shift of closed modes. Off by default: the mode sum then
    /// runs over open channels only and is exact.
    bool include_red_shift = false;
    /// Number of lowest modes summed when red shifts are kept. The red-shift sum
    /// decays slowly with mode number, so results depend on this truncation.
    int red_shift_modes = 64;
    double guard = kCutoffGuard;
};

/// zeta_j(E): 2 ln(omega_j / (E - sqrt(E^2 - omega_j^2))) above cutoff,
/// -pi - 2 atan(E / sqrt(omega_j^2 - E^2)) below. DomainError at E = omega_j.
double zeta(const TmMode& mode, double energy);

/// Gamma_j^(i)(E); zero below cutoff, BoundaryError exactly at cutoff.
double decay_rate(const EmitterParams& em, int transition, const TmMode& mode, double energy);

/// Delta_j^(i)(E); closed modes give 0 unless include_red_shift is set.
double lamb_shift(const EmitterParams& em, int transition, const TmMode& mode, double energy,
                  bool include_red_shift);

struct ModeSelfEnergy {
    TmMode mode;
    double zeta = 0.0;
    std::array<double, 2> shift{};  // Delta_j^(1), Delta_j^(2)
    std::array<double, 2> decay{};  // Gamma_j^(1), Gamma_j^(2)
    bool open = false;
};

struct SelfEnergy {
    double energy = 0.0;
    bool include_red_shift = false;
    std::vector<ModeSelfEnergy> modes;  // every mode that entered the sum, ascending rank
    std::array<double, 2> shift{};      // Delta^(i) = sum_j Delta_j^(i)
    std::array<double, 2> decay{};      // Gamma^(i) = sum_j Gamma_j^(i)

    complex h(int transition) const;
};

/// Per-mode and summed self-energy of both transitions at energy E.
/// BoundaryError if E lies within opts.guard of any cutoff that can enter the sum.
SelfEnergy self_energy(const EmitterParams& em, const WaveguideGeometry& geom, double energy,
                       const SelfEnergyOptions& opts = {});

complex h_total(const EmitterParams& em, int transition, const WaveguideGeometry& geom,
                double energy, const SelfEnergyOptions& opts = {});

struct ResolventValue {
    double energy = 0.0;
    complex f;
    EmitterVariant variant = EmitterVariant::generic;
    /// Multipliers w_i with u_e^(i) = g^(i) w_i / f. Generic: (E - Omega2, E - Omega1);
    /// degenerate: (1, 1); two-level: 1 on the active transition, 0 on the other.
    std::array<double, 2> weights{};
    SelfEnergy self;

    /// Lambda_j = Gamma_j^(1) w_1 + Gamma_j^(2) w_2 for the mode of rank j (0 if closed).
    double channel_width(int rank) const;
    /// Lambda = sum_j Lambda_j, which equals Im f.
    double total_width() const;
};

/// f(E) in the form dictated by the emitter variant:
///   generic     (E - O1)(E - O2) - (E - O2) h1 - (E - O1) h2
///   degenerate  E - O - h1 - h2
///   two-level   E - O_a - h_a
ResolventValue f_eval(const EmitterParams& em, const WaveguideGeometry& geom, double energy,
                      const SelfEnergyOptions& opts = {});

}  // namespace wgqed
