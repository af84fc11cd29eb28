#pragma once

// Single-photon scattering off the emitter: input states, per-channel
// reflection/transmission, and the closed-form reductions.
//
// Channel basis. Input and output amplitudes c_j, r_j refer to the parity-aligned
// channel states s_j |phi_{j,k}>, s_j = sin(m pi/2) sin(n pi/2). In this basis the
// emitter couples to every channel with the same sign, so the dark-state condition
// reads sum_j c_j omega_j = 0 and the coherent superposition state has real
// positive amplitudes. Reflectivities and transmissivities are basis independent.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "wgqed/emitter.hpp"
#include "wgqed/geometry.hpp"
#include "wgqed/selfenergy.hpp"

namespace wgqed {

inline constexpr double kNormTolerance = 1e-12;

struct InputState {
    double energy = 0.0;              // omega_in (PHz)
    std::vector<complex> amplitudes;  // c_j for ranks 1..j_max
    std::vector<TmMode> modes;        // channels with omega_j <= omega_in, ascending rank

    int j_max() const { return static_cast<int>(modes.size()); }

    /// Throws InvalidArgument unless sum |c_j|^2 = 1 within kNormTolerance, the
    /// amplitude and mode lists agree, and the mode list is exactly the set of
    /// channels with omega_j <= omega_in.
    void validate() const;
};

/// Channels available at omega_in (omega_j <= omega_in).
std::vector<TmMode> channels(const WaveguideGeometry& geom, double omega_in);

/// c_j = delta_{jn}. DomainError if mode n does not propagate at omega_in.
InputState make_single_mode(const WaveguideGeometry& geom, double omega_in, int n);

/// Coherent superposition state, c_j proportional to omega_j / sqrt(omega_in^2 - omega_j^2).
/// BoundaryError if omega_in sits on a cutoff (within kCutoffGuard).
InputState make_css(const WaveguideGeometry& geom, double omega_in);

/// Dark state with sum_j c_j omega_j = 0. `free` holds the amplitudes of channels
/// 2..j_max before normalisation (default: only channel 2 populated); c_1 absorbs
/// the constraint. The global phase makes c_1 real and non-negative.
/// DomainError when only one channel is open.
InputState make_dark(const WaveguideGeometry& geom, double omega_in,
                     std::span<const complex> free = {});

/// Arbitrary amplitudes for channels 1..len (missing channels get 0). With
/// normalize = false the vector must already have unit norm.
InputState make_custom(const WaveguideGeometry& geom, double omega_in,
                       std::span<const complex> amplitudes, bool normalize = false);

/// u_e^(1), u_e^(2): u_e^(i) = sum_j c_j g_j^(i) w_i / f(E).
/// SingularResolvent if f vanishes, BoundaryError on a cutoff.
std::array<complex, 2> excited_amplitudes(const EmitterParams& em, const WaveguideGeometry& geom,
                                          const InputState& input,
                                          const SelfEnergyOptions& opts = {});

enum class CutoffResonance {
    none,
    occupied,    // omega_in equals the cutoff of a populated channel: R = 1
    unoccupied,  // omega_in equals the cutoff of an empty channel: R = 0
};

struct ScatteringResult {
    double energy = 0.0;
    EmitterVariant variant = EmitterVariant::generic;
    CutoffResonance resonance = CutoffResonance::none;
    complex f;                     // f(omega_in); NaN on a cutoff resonance
    std::vector<complex> r;        // r_j
    std::vector<double> reflect;   // R_j
    std::vector<double> transmit;  // T_j
    std::vector<double> width;     // Lambda_j
    std::vector<double> density;   // rho_j (infinite for a channel at its cutoff)
    double R = 0.0;
    double T = 0.0;
};

/// r_j = -2 pi i rho_j sum_{j', i} c_{j'} g_j^(i) u_e^(i)(j'), with R_j, T_j normalised
/// by sum_j |c_j|^2 / rho_j. An energy exactly on a cutoff is handled as the limit
/// from above; any other energy within the guard margin raises BoundaryError.
ScatteringResult scatter(const EmitterParams& em, const WaveguideGeometry& geom,
                         const InputState& input, const SelfEnergyOptions& opts = {});

/// Total reflectivity from the closed form
///   R = |Im f / f|^2 |sum c_j omega_j|^2 / (sum omega_j^2 / k_j * sum |c_j|^2 k_j).
double reflectivity_closed_form(const EmitterParams& em, const WaveguideGeometry& geom,
                                const InputState& input, const SelfEnergyOptions& opts = {});

enum class ClosedFormKind { single_mode_window, css };

/// R = Im(f)^2 / |f|^2. single_mode_window requires exactly one open channel;
/// css requires at least one. Mismatch raises InvalidArgument.
double closed_form_R(const EmitterParams& em, const WaveguideGeometry& geom, double omega_in,
                     ClosedFormKind kind, const SelfEnergyOptions& opts = {});

struct SingleModeLaws {
    int input_rank = 0;
    std::vector<double> width;     // Lambda_j
    double total_width = 0.0;      // Lambda = sum_j Lambda_j = Im f
    std::vector<double> reflect;   // R_j = Lambda_n Lambda_j / |f|^2
    std::vector<double> transmit;  // T_n = |1 - i Lambda_n / f|^2, T_j = R_j otherwise
    double R = 0.0;                // Lambda_n Lambda / |f|^2
    double peak_bound = 0.0;       // Lambda_n / Lambda, the value of R where Re f = 0
    complex f;
};

/// Channel laws for an input in the single channel n.
SingleModeLaws single_mode_input_laws(const EmitterParams& em, const WaveguideGeometry& geom,
                                      double omega_in, int n, const SelfEnergyOptions& opts = {});

struct ChannelAmplitude {
    complex t;         // -2 pi i sum_i g_out^(i) u_e^(i)(in), the smooth on-shell factor
    complex forward;   // flux-normalised S element into +k_out: delta + sqrt(rho_out rho_in) t
    complex backward;  // flux-normalised S element into -k_out: sqrt(rho_out rho_in) t
};

/// On-shell S-matrix between open channels j_in -> j_out at energy omega.
ChannelAmplitude s_matrix_channel(const EmitterParams& em, const WaveguideGeometry& geom,
                                  double omega, int j_out, int j_in,
                                  const SelfEnergyOptions& opts = {});

}  // namespace wgqed
