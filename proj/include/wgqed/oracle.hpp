#pragma once

// Brute-force evaluation of the single-mode self-energy integral
//
//   h_j^(i)(E) = int dk |g_{j,k}^(i)|^2 / (E - omega_{j,k} + i0+)
//
// by principal-value quadrature. Shares nothing with the closed-form Lamb shift
// and decay rate beyond the coupling and dispersion, so it serves as an
// independent check of those expressions.

#include <array>
#include <complex>

#include "wgqed/emitter.hpp"
#include "wgqed/geometry.hpp"

namespace wgqed {

struct OracleOptions {
    /// Finite panels run up to K_max with omega_{j,K_max} = k_max_factor * E; the
    /// remaining tail to infinity is integrated on a mapped interval.
    double k_max_factor = 50.0;
    /// Symmetric exclusion radii around the on-shell pole, as fractions of
    /// min(E, k_j). Must be decreasing by a constant factor.
    std::array<double, 3> exclusion{1e-3, 1e-4, 1e-5};
    double quadrature_tol = 1e-12;
    /// Maximum relative disagreement between the two extrapolation levels.
    double convergence_tol = 1e-8;
};

struct OracleResult {
    std::complex<double> value;
    double extrapolation_error = 0.0;  // |last two Richardson levels| (absolute)
};

/// Principal-value quadrature of the self-energy of one mode; the imaginary part
/// comes from the on-shell delta function. Throws OracleFailure if the Richardson
/// extrapolation in the exclusion radius does not settle.
OracleResult h_numeric_oracle_detailed(const EmitterParams& em, int transition, const TmMode& mode,
                                       double energy, const OracleOptions& opts = {});

std::complex<double> h_numeric_oracle(const EmitterParams& em, int transition, const TmMode& mode,
                                      double energy, const OracleOptions& opts = {});

}  // namespace wgqed
