#include "wgqed/emitter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

void require_transition(int transition) {
    if (transition != 1 && transition != 2) {
        throw InvalidArgument("transition index must be 1 or 2");
    }
}

}  // namespace

std::string to_string(EmitterVariant variant) {
    switch (variant) {
        case EmitterVariant::generic: return "generic";
        case EmitterVariant::degenerate: return "degenerate";
        case EmitterVariant::two_level: return "two_level";
    }
    return "unknown";
}

double EmitterParams::omega(int transition) const {
    require_transition(transition);
    return transition == 1 ? omega1 : omega2;
}

double EmitterParams::lambda(int transition) const {
    require_transition(transition);
    return transition == 1 ? lambda1 : lambda2;
}

EmitterVariant EmitterParams::variant() const {
    if ((lambda1 == 0.0) != (lambda2 == 0.0)) return EmitterVariant::two_level;
    if (std::abs(omega1 - omega2) <= kDegeneracyTolerance * std::max(omega1, omega2)) {
        return EmitterVariant::degenerate;
    }
    return EmitterVariant::generic;
}

int EmitterParams::active_transition() const {
    return lambda2 == 0.0 ? 1 : 2;
}

double EmitterParams::reduced_level() const {
    switch (variant()) {
        case EmitterVariant::two_level: return omega(active_transition());
        case EmitterVariant::degenerate: return 0.5 * (omega1 + omega2);
        case EmitterVariant::generic: break;
    }
    throw InvalidArgument("a generic emitter has no single reduced level");
}

void EmitterParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(omega1) || !finite(omega2) || !(omega1 > 0.0) || !(omega2 > 0.0)) {
        throw InvalidArgument("transition frequencies must be positive");
    }
    if (!finite(lambda1) || !finite(lambda2) || lambda1 < 0.0 || lambda2 < 0.0) {
        throw InvalidArgument("coupling strengths must be non-negative");
    }
}

double lambda_from_dipole(double dipole, const WaveguideGeometry& geom) {
    geom.validate();
    if (dipole < 0.0) throw InvalidArgument("dipole moment must be non-negative");
    return dipole / std::sqrt(std::numbers::pi * geom.a * geom.b);
}

double aligned_coupling(const EmitterParams& em, const TmMode& mode, double k, int transition) {
    const double w = dispersion(mode, k);
    return -em.lambda(transition) * em.omega(transition) * mode.cutoff / (w * std::sqrt(w));
}

double coupling(const EmitterParams& em, const TmMode& mode, double k, int transition) {
    return mode.parity() * aligned_coupling(em, mode, k, transition);
}

}  // namespace wgqed
