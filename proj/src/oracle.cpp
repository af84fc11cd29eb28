#include "wgqed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kMaxDepth = 20;

template <class F>
double integrate(F&& fn, double lo, double hi, double tol) {
    if (!(hi > lo)) return 0.0;
    return gauss_kronrod<double, 31>::integrate(fn, lo, hi, kMaxDepth, tol);
}

}  // namespace

OracleResult h_numeric_oracle_detailed(const EmitterParams& em, int transition, const TmMode& mode,
                                       double energy, const OracleOptions& opts) {
    if (!(energy > 0.0)) throw InvalidArgument("oracle energy must be positive");
    if (energy == mode.cutoff) throw DomainError("oracle evaluated at a cutoff");

    auto weight = [&](double k) {
        const double g = coupling(em, mode, k, transition);
        return g * g;
    };
    auto integrand = [&](double k) { return weight(k) / (energy - dispersion(mode, k)); };

    const double omega_max = opts.k_max_factor * energy;
    const double k_max = std::sqrt(omega_max * omega_max - mode.cutoff * mode.cutoff);
    const double tol = opts.quadrature_tol;
    const double tail = integrate(integrand, k_max, std::numeric_limits<double>::infinity(), tol);

    OracleResult out;
    if (energy < mode.cutoff) {
        // No pole on the path: the integrand is even in k and regular.
        out.value = {2.0 * (integrate(integrand, 0.0, k_max, tol) + tail), 0.0};
        return out;
    }

    const double k_on = wavenumber(mode, energy);
    const double half = 0.5 * k_on;
    if (!(k_max > k_on + half)) throw OracleFailure("oracle K_max does not enclose the pole region");

    const double far = integrate(integrand, 0.0, k_on - half, tol) +
                       integrate(integrand, k_on + half, k_max, tol) + tail;

    // Near the pole integrate in u = ln|k - k_on|, which removes the 1/(k - k_on) growth.
    auto near_side = [&](double delta) {
        auto right = [&](double u) {
            const double x = std::exp(u);
            return integrand(k_on + x) * x;
        };
        auto left = [&](double u) {
            const double x = std::exp(u);
            return integrand(k_on - x) * x;
        };
        const double lo = std::log(delta);
        const double hi = std::log(half);
        return integrate(right, lo, hi, tol) + integrate(left, lo, hi, tol);
    };

    const double scale = std::min(energy, k_on);
    std::array<double, 3> pv{};
    for (std::size_t s = 0; s < pv.size(); ++s) {
        const double delta = opts.exclusion[s] * scale;
        if (!(delta < 0.5 * half)) throw OracleFailure("exclusion radius exceeds the pole region");
        pv[s] = far + near_side(delta);
    }

    // The excluded strip contributes odd powers of the radius only: c1 d + c3 d^3 + ...
    const double ratio = opts.exclusion[0] / opts.exclusion[1];
    if (std::abs(opts.exclusion[1] / opts.exclusion[2] - ratio) > 1e-12 * ratio) {
        throw OracleFailure("exclusion radii must form a geometric sequence");
    }
    const double lin_a = (ratio * pv[1] - pv[0]) / (ratio - 1.0);
    const double lin_b = (ratio * pv[2] - pv[1]) / (ratio - 1.0);
    const double r3 = ratio * ratio * ratio;
    const double principal = (r3 * lin_b - lin_a) / (r3 - 1.0);

    // -i pi sum over roots k = +-k_on of |g|^2 / |d omega / dk|, with d omega / dk = k / omega.
    const double imag = -std::numbers::pi * 2.0 * weight(k_on) * energy / k_on;

    out.value = {2.0 * principal, imag};
    out.extrapolation_error = 2.0 * std::abs(principal - lin_b);
    const double magnitude = std::abs(out.value);
    if (!std::isfinite(principal) || out.extrapolation_error > opts.convergence_tol * magnitude) {
        throw OracleFailure("principal-value extrapolation did not converge at E = " +
                            std::to_string(energy) + " for " + mode.label());
    }
    return out;
}

std::complex<double> h_numeric_oracle(const EmitterParams& em, int transition, const TmMode& mode,
                                      double energy, const OracleOptions& opts) {
    return h_numeric_oracle_detailed(em, transition, mode, energy, opts).value;
}

}  // namespace wgqed
