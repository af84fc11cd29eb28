#pragma once

#include <string>

#include "wgqed/geometry.hpp"

namespace wgqed {

/// Relative splitting |Omega1 - Omega2| / max(Omega1, Omega2) below which the
/// upper levels are treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

enum class EmitterVariant { generic, degenerate, two_level };

std::string to_string(EmitterVariant variant);

/// V-type emitter: two upper levels |e1>, |e2> at Omega1, Omega2 (PHz), each
/// dipole-coupled to the ground state with dimensionless strength lambda_i.
struct EmitterParams {
    double omega1 = 1.0;
    double omega2 = 1.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    double omega(int transition) const;
    double lambda(int transition) const;

    /// two_level when exactly one coupling is zero (exact comparison), degenerate
    /// when the splitting is within kDegeneracyTolerance, generic otherwise. A fully
    /// decoupled emitter (both lambdas zero) is generic.
    EmitterVariant variant() const;

    /// Transition (1 or 2) carrying the coupling of a two-level emitter.
    int active_transition() const;

    /// Level used by the degenerate and two-level forms of f.
    double reduced_level() const;

    /// Throws InvalidArgument unless Omega_i > 0 and lambda_i >= 0 (all finite).
    void validate() const;
};

/// lambda_i = p_i / sqrt(pi a b).
double lambda_from_dipole(double dipole, const WaveguideGeometry& geom);

/// g_{j,k}^{(i)} = -lambda_i Omega_i omega_j / omega_{j,k}^{3/2} * sin(m pi/2) sin(n pi/2).
double coupling(const EmitterParams& em, const TmMode& mode, double k, int transition);

/// Coupling with the mode parity factor dropped: the same quantity expressed in the
/// parity-aligned channel basis used for input amplitudes (see scattering.hpp).
double aligned_coupling(const EmitterParams& em, const TmMode& mode, double k, int transition);

}  // namespace wgqed
