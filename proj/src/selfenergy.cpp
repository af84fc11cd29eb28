#include "wgqed/selfenergy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_energy(double energy) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidArgument("energy must be positive and finite");
    }
}

[[noreturn]] void throw_at_cutoff(const TmMode& mode, double energy, const char* what) {
    throw BoundaryError(std::string(what) + " is singular at the " + mode.label() +
                            " cutoff (E = " + std::to_string(energy) + ")",
                        energy, mode.cutoff);
}

// sqrt(|omega_j^2 - E^2|) without cancellation.
double gap(const TmMode& mode, double energy) {
    return std::sqrt(std::abs((energy - mode.cutoff) * (energy + mode.cutoff)));
}

}  // namespace

double zeta(const TmMode& mode, double energy) {
    require_positive_energy(energy);
    if (energy == mode.cutoff) throw_at_cutoff(mode, energy, "zeta");
    const double s = gap(mode, energy);
    if (energy > mode.cutoff) {
        // omega_j / (E - s) = (E + s) / omega_j
        return 2.0 * std::log1p((energy - mode.cutoff + s) / mode.cutoff);
    }
    return -kPi - 2.0 * std::atan(energy / s);
}

double decay_rate(const EmitterParams& em, int transition, const TmMode& mode, double energy) {
    require_positive_energy(energy);
    if (energy == mode.cutoff) throw_at_cutoff(mode, energy, "decay rate");
    if (energy < mode.cutoff) return 0.0;
    const double lo = em.lambda(transition) * em.omega(transition);
    const double w = mode.cutoff;
    return 2.0 * kPi * lo * lo * w * w / (energy * energy * gap(mode, energy));
}

double lamb_shift(const EmitterParams& em, int transition, const TmMode& mode, double energy,
                  bool include_red_shift) {
    require_positive_energy(energy);
    if (energy == mode.cutoff) throw_at_cutoff(mode, energy, "Lamb shift");
    if (energy < mode.cutoff && !include_red_shift) return 0.0;
    const double lo = em.lambda(transition) * em.omega(transition);
    const double w = mode.cutoff;
    const double bracket = 2.0 * energy + kPi * w + w * w * zeta(mode, energy) / gap(mode, energy);
    return lo * lo / (energy * energy) * bracket;
}

complex SelfEnergy::h(int transition) const {
    const int i = transition - 1;
    if (i != 0 && i != 1) throw InvalidArgument("transition index must be 1 or 2");
    return {shift[i], -decay[i]};
}

SelfEnergy self_energy(const EmitterParams& em, const WaveguideGeometry& geom, double energy,
                       const SelfEnergyOptions& opts) {
    require_positive_energy(energy);
    em.validate();

    std::vector<TmMode> modes = enumerate_modes(geom, energy * (1.0 + opts.guard));
    if (opts.include_red_shift && static_cast<int>(modes.size()) < opts.red_shift_modes) {
        modes = lowest_modes(geom, opts.red_shift_modes);
    }

    SelfEnergy se;
    se.energy = energy;
    se.include_red_shift = opts.include_red_shift;
    se.modes.reserve(modes.size());
    for (const auto& mode : modes) {
        if (std::abs(energy - mode.cutoff) <= opts.guard * mode.cutoff) {
            throw BoundaryError("energy " + std::to_string(energy) + " lies within the guard margin of the " +
                                    mode.label() + " cutoff",
                                energy, mode.cutoff);
        }
        const bool open = mode.cutoff < energy;
        if (!open && !opts.include_red_shift) continue;

        ModeSelfEnergy part;
        part.mode = mode;
        part.open = open;
        part.zeta = zeta(mode, energy);
        for (int i = 0; i < 2; ++i) {
            part.shift[i] = lamb_shift(em, i + 1, mode, energy, opts.include_red_shift);
            part.decay[i] = decay_rate(em, i + 1, mode, energy);
            se.shift[i] += part.shift[i];
            se.decay[i] += part.decay[i];
        }
        se.modes.push_back(part);
    }
    return se;
}

complex h_total(const EmitterParams& em, int transition, const WaveguideGeometry& geom,
                double energy, const SelfEnergyOptions& opts) {
    return self_energy(em, geom, energy, opts).h(transition);
}

double ResolventValue::channel_width(int rank) const {
    for (const auto& part : self.modes) {
        if (part.mode.rank == rank) return part.decay[0] * weights[0] + part.decay[1] * weights[1];
    }
    return 0.0;
}

double ResolventValue::total_width() const {
    return self.decay[0] * weights[0] + self.decay[1] * weights[1];
}

ResolventValue f_eval(const EmitterParams& em, const WaveguideGeometry& geom, double energy,
                      const SelfEnergyOptions& opts) {
    ResolventValue out;
    out.energy = energy;
    out.self = self_energy(em, geom, energy, opts);
    out.variant = em.variant();

    const complex h1 = out.self.h(1);
    const complex h2 = out.self.h(2);
    switch (out.variant) {
        case EmitterVariant::generic: {
            const double d1 = energy - em.omega1;
            const double d2 = energy - em.omega2;
            out.weights = {d2, d1};
            out.f = d1 * d2 - d2 * h1 - d1 * h2;
            break;
        }
        case EmitterVariant::degenerate:
            out.weights = {1.0, 1.0};
            out.f = energy - em.reduced_level() - h1 - h2;
            break;
        case EmitterVariant::two_level:
            if (em.active_transition() == 1) {
                out.weights = {1.0, 0.0};
                out.f = energy - em.omega1 - h1;
            } else {
                out.weights = {0.0, 1.0};
                out.f = energy - em.omega2 - h2;
            }
            break;
    }
    return out;
}

}  // namespace wgqed
