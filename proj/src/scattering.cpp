#include "wgqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

constexpr double kPi = std::numbers::pi;
const complex kI{0.0, 1.0};

double norm2(std::span<const complex> c) {
    return std::accumulate(c.begin(), c.end(), 0.0,
                           [](double acc, const complex& z) { return acc + std::norm(z); });
}

void normalise(std::vector<complex>& c) {
    const double n = std::sqrt(norm2(c));
    if (!(n > 0.0)) throw InvalidArgument("input amplitudes must not all vanish");
    for (auto& z : c) z /= n;
}

void require_off_cutoffs(const std::vector<TmMode>& modes, double omega_in, const char* who) {
    for (const auto& mode : modes) {
        if (std::abs(omega_in - mode.cutoff) <= kCutoffGuard * mode.cutoff) {
            throw BoundaryError(std::string(who) + ": omega_in coincides with the " + mode.label() +
                                    " cutoff",
                                omega_in, mode.cutoff);
        }
    }
}

InputState empty_state(const WaveguideGeometry& geom, double omega_in) {
    if (!(omega_in > 0.0) || !std::isfinite(omega_in)) {
        throw InvalidArgument("omega_in must be positive and finite");
    }
    InputState s;
    s.energy = omega_in;
    s.modes = channels(geom, omega_in);
    s.amplitudes.assign(s.modes.size(), complex{});
    return s;
}

// On-shell couplings g_j^(i) (aligned basis) of every input channel.
std::array<std::vector<double>, 2> on_shell_couplings(const EmitterParams& em,
                                                      const InputState& input) {
    std::array<std::vector<double>, 2> g;
    for (int i = 0; i < 2; ++i) {
        g[i].reserve(input.modes.size());
        for (const auto& mode : input.modes) {
            g[i].push_back(aligned_coupling(em, mode, wavenumber(mode, input.energy), i + 1));
        }
    }
    return g;
}

std::array<complex, 2> excited_from(const ResolventValue& rv,
                                    const std::array<std::vector<double>, 2>& g,
                                    const InputState& input) {
    if (rv.f == complex{}) {
        throw SingularResolvent("f(E) vanishes at E = " + std::to_string(rv.energy));
    }
    std::array<complex, 2> ue{};
    for (int i = 0; i < 2; ++i) {
        complex drive{};
        for (std::size_t j = 0; j < input.amplitudes.size(); ++j) drive += input.amplitudes[j] * g[i][j];
        ue[i] = drive * rv.weights[i] / rv.f;
    }
    return ue;
}

ScatteringResult cutoff_limit(const EmitterParams& em, const InputState& input, int at_rank) {
    ScatteringResult res;
    res.energy = input.energy;
    res.variant = em.variant();
    res.f = complex{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const std::size_t n = input.modes.size();
    res.r.assign(n, complex{});
    res.reflect.assign(n, 0.0);
    res.transmit.assign(n, 0.0);
    res.width.assign(n, 0.0);
    res.density.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        res.density[j] = input.modes[j].rank == at_rank ? std::numeric_limits<double>::infinity()
                                                        : state_density(input.modes[j], input.energy);
    }
    const std::size_t at = static_cast<std::size_t>(at_rank - 1);
    if (input.amplitudes[at] != complex{}) {
        // Zero group velocity in a populated channel: the photon is fully reflected.
        res.resonance = CutoffResonance::occupied;
        res.reflect[at] = 1.0;
        res.r[at] = -input.amplitudes[at];
        res.R = 1.0;
        res.T = 0.0;
        return res;
    }
    // The newly opening channel dominates Im f, so every r_j vanishes in the limit.
    res.resonance = CutoffResonance::unoccupied;
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j != at) denom += std::norm(input.amplitudes[j]) / res.density[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (j != at) res.transmit[j] = std::norm(input.amplitudes[j]) / res.density[j] / denom;
    }
    res.R = 0.0;
    res.T = 1.0;
    return res;
}

}  // namespace

void InputState::validate() const {
    if (amplitudes.size() != modes.size()) {
        throw InvalidArgument("input state has " + std::to_string(amplitudes.size()) +
                              " amplitudes for " + std::to_string(modes.size()) + " channels");
    }
    if (std::abs(norm2(amplitudes) - 1.0) > kNormTolerance) {
        throw InvalidArgument("input amplitudes are not normalised (sum |c|^2 = " +
                              std::to_string(norm2(amplitudes)) + ")");
    }
    for (std::size_t j = 0; j < modes.size(); ++j) {
        if (modes[j].rank != static_cast<int>(j) + 1 || modes[j].cutoff > energy) {
            throw InvalidArgument("input channel list must hold the open modes in rank order");
        }
    }
}

std::vector<TmMode> channels(const WaveguideGeometry& geom, double omega_in) {
    return enumerate_modes(geom, omega_in);
}

InputState make_single_mode(const WaveguideGeometry& geom, double omega_in, int n) {
    InputState s = empty_state(geom, omega_in);
    if (n < 1 || n > s.j_max()) {
        throw DomainError("mode " + std::to_string(n) + " does not propagate at omega_in = " +
                          std::to_string(omega_in));
    }
    s.amplitudes[n - 1] = 1.0;
    return s;
}

InputState make_css(const WaveguideGeometry& geom, double omega_in) {
    InputState s = empty_state(geom, omega_in);
    if (s.j_max() == 0) throw DomainError("no propagating channel below the TM11 cutoff");
    require_off_cutoffs(enumerate_modes(geom, omega_in * (1.0 + kCutoffGuard)), omega_in, "make_css");
    for (int j = 0; j < s.j_max(); ++j) {
        const auto& mode = s.modes[j];
        s.amplitudes[j] = mode.cutoff / wavenumber(mode, omega_in);
    }
    normalise(s.amplitudes);
    return s;
}

InputState make_dark(const WaveguideGeometry& geom, double omega_in, std::span<const complex> free) {
    InputState s = empty_state(geom, omega_in);
    if (s.j_max() < 2) throw DomainError("a dark state needs at least two open channels");
    require_off_cutoffs(enumerate_modes(geom, omega_in * (1.0 + kCutoffGuard)), omega_in, "make_dark");
    if (free.size() > static_cast<std::size_t>(s.j_max() - 1)) {
        throw InvalidArgument("too many free amplitudes for the open channels");
    }

    if (free.empty()) {
        s.amplitudes[1] = 1.0;
    } else {
        std::copy(free.begin(), free.end(), s.amplitudes.begin() + 1);
    }
    complex constraint{};
    for (int j = 1; j < s.j_max(); ++j) constraint += s.amplitudes[j] * s.modes[j].cutoff;
    s.amplitudes[0] = -constraint / s.modes[0].cutoff;
    normalise(s.amplitudes);

    const auto lead = std::find_if(s.amplitudes.begin(), s.amplitudes.end(),
                                   [](const complex& z) { return std::abs(z) > 0.0; });
    const double magnitude = std::abs(*lead);
    const complex phase = std::conj(*lead) / magnitude;
    for (auto& z : s.amplitudes) z *= phase;
    *lead = magnitude;
    return s;
}

InputState make_custom(const WaveguideGeometry& geom, double omega_in,
                       std::span<const complex> amplitudes, bool normalize) {
    InputState s = empty_state(geom, omega_in);
    if (amplitudes.size() > s.amplitudes.size()) {
        throw DomainError(std::to_string(amplitudes.size()) + " amplitudes given but only " +
                          std::to_string(s.j_max()) + " channels propagate at omega_in = " +
                          std::to_string(omega_in));
    }
    std::copy(amplitudes.begin(), amplitudes.end(), s.amplitudes.begin());
    if (normalize) normalise(s.amplitudes);
    s.validate();
    return s;
}

std::array<complex, 2> excited_amplitudes(const EmitterParams& em, const WaveguideGeometry& geom,
                                          const InputState& input, const SelfEnergyOptions& opts) {
    input.validate();
    const ResolventValue rv = f_eval(em, geom, input.energy, opts);
    return excited_from(rv, on_shell_couplings(em, input), input);
}

ScatteringResult scatter(const EmitterParams& em, const WaveguideGeometry& geom,
                         const InputState& input, const SelfEnergyOptions& opts) {
    input.validate();
    em.validate();
    for (const auto& mode : input.modes) {
        if (mode.cutoff == input.energy) return cutoff_limit(em, input, mode.rank);
    }

    const ResolventValue rv = f_eval(em, geom, input.energy, opts);
    const auto g = on_shell_couplings(em, input);
    const auto ue = excited_from(rv, g, input);

    const std::size_t n = input.modes.size();
    ScatteringResult res;
    res.energy = input.energy;
    res.variant = rv.variant;
    res.f = rv.f;
    res.r.resize(n);
    res.reflect.resize(n);
    res.transmit.resize(n);
    res.width.resize(n);
    res.density.resize(n);

    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& mode = input.modes[j];
        res.density[j] = state_density(mode, input.energy);
        res.width[j] = rv.channel_width(mode.rank);
        const complex emitted = g[0][j] * ue[0] + g[1][j] * ue[1];
        res.r[j] = -2.0 * kPi * kI * res.density[j] * emitted;
        denom += std::norm(input.amplitudes[j]) / res.density[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        res.reflect[j] = std::norm(res.r[j]) / res.density[j] / denom;
        res.transmit[j] = std::norm(input.amplitudes[j] + res.r[j]) / res.density[j] / denom;
        res.R += res.reflect[j];
        res.T += res.transmit[j];
    }
    return res;
}

double reflectivity_closed_form(const EmitterParams& em, const WaveguideGeometry& geom,
                                const InputState& input, const SelfEnergyOptions& opts) {
    input.validate();
    const ResolventValue rv = f_eval(em, geom, input.energy, opts);
    complex coherent{};
    double density_sum = 0.0;
    double flux_sum = 0.0;
    for (std::size_t j = 0; j < input.modes.size(); ++j) {
        const auto& mode = input.modes[j];
        const double k = wavenumber(mode, input.energy);
        coherent += input.amplitudes[j] * mode.cutoff;
        density_sum += mode.cutoff * mode.cutoff / k;
        flux_sum += std::norm(input.amplitudes[j]) * k;
    }
    const double ratio = std::norm(rv.f.imag() / rv.f);
    return ratio * std::norm(coherent) / (density_sum * flux_sum);
}

double closed_form_R(const EmitterParams& em, const WaveguideGeometry& geom, double omega_in,
                     ClosedFormKind kind, const SelfEnergyOptions& opts) {
    const Region region = classify_region(geom, omega_in, opts.guard);
    if (region.kind == RegionKind::boundary) {
        throw BoundaryError("closed_form_R evaluated on a cutoff", omega_in, omega_in);
    }
    if (kind == ClosedFormKind::single_mode_window && region.kind != RegionKind::single_mode) {
        throw InvalidArgument("single-mode closed form used outside the single-mode window");
    }
    if (kind == ClosedFormKind::css && region.j_max < 1) {
        throw InvalidArgument("CSS closed form used in the cutoff region");
    }
    const complex f = f_eval(em, geom, omega_in, opts).f;
    if (f == complex{}) throw SingularResolvent("f(E) vanishes");
    return f.imag() * f.imag() / std::norm(f);
}

SingleModeLaws single_mode_input_laws(const EmitterParams& em, const WaveguideGeometry& geom,
                                      double omega_in, int n, const SelfEnergyOptions& opts) {
    const auto open = channels(geom, omega_in);
    if (n < 1 || n > static_cast<int>(open.size())) {
        throw DomainError("input mode " + std::to_string(n) + " is closed at omega_in = " +
                          std::to_string(omega_in));
    }
    const ResolventValue rv = f_eval(em, geom, omega_in, opts);
    if (rv.f == complex{}) throw SingularResolvent("f(E) vanishes");

    SingleModeLaws laws;
    laws.input_rank = n;
    laws.f = rv.f;
    for (const auto& mode : open) laws.width.push_back(rv.channel_width(mode.rank));
    laws.total_width = std::accumulate(laws.width.begin(), laws.width.end(), 0.0);

    const double fn2 = std::norm(rv.f);
    const double lam_n = laws.width[n - 1];
    for (std::size_t j = 0; j < open.size(); ++j) {
        const double rj = lam_n * laws.width[j] / fn2;
        laws.reflect.push_back(rj);
        laws.transmit.push_back(static_cast<int>(j) + 1 == n ? std::norm(1.0 - kI * lam_n / rv.f) : rj);
    }
    laws.R = lam_n * laws.total_width / fn2;
    laws.peak_bound = lam_n / laws.total_width;
    return laws;
}

ChannelAmplitude s_matrix_channel(const EmitterParams& em, const WaveguideGeometry& geom,
                                  double omega, int j_out, int j_in, const SelfEnergyOptions& opts) {
    const auto open = channels(geom, omega);
    const int j_max = static_cast<int>(open.size());
    if (j_out < 1 || j_out > j_max || j_in < 1 || j_in > j_max) {
        throw DomainError("S-matrix requested for a closed channel at omega = " + std::to_string(omega));
    }
    const ResolventValue rv = f_eval(em, geom, omega, opts);
    if (rv.f == complex{}) throw SingularResolvent("f(E) vanishes");

    const TmMode& out_mode = open[j_out - 1];
    const TmMode& in_mode = open[j_in - 1];
    const double k_out = wavenumber(out_mode, omega);
    const double k_in = wavenumber(in_mode, omega);

    complex emitted{};
    for (int i = 1; i <= 2; ++i) {
        const double g_out = aligned_coupling(em, out_mode, k_out, i);
        const double g_in = aligned_coupling(em, in_mode, k_in, i);
        emitted += g_out * g_in * rv.weights[i - 1] / rv.f;
    }
    ChannelAmplitude amp;
    amp.t = -2.0 * kPi * kI * emitted;
    const double flux = std::sqrt(state_density(out_mode, omega) * state_density(in_mode, omega));
    amp.backward = flux * amp.t;
    amp.forward = (j_out == j_in ? 1.0 : 0.0) + flux * amp.t;
    return amp;
}

}  // namespace wgqed
