#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "iqsim/dsp.hpp"
#include "iqsim/iq_trace.hpp"
#include "iqsim/laser.hpp"
#include "iqsim/scene.hpp"

namespace iqsim::receiver {

// Beat sampling headroom: fs must exceed 2 * gamma * tau * (1 + margin).
inline constexpr double kSamplingMargin = 0.25;

// 90-degree hybrid plus balanced photodiode pair parameters. Imperfections
// act on the quadrature branch only: its LO port picks up an extra phase
// phase_error_rad and the Q photocurrent a gain (1 + amplitude_imbalance).
// Common-mode errors are unobservable after balanced detection.
struct HybridConfig {
    double phase_error_rad = 0.0;
    double amplitude_imbalance = 0.0;
    double responsivity_a_per_w = 1.0;

    void validate() const; // throws ConfigError
};

// Simplified additive electrical noise: independent Gaussian of standard
// deviation sigma on each I and Q sample.
struct NoiseConfig {
    double sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const; // throws ConfigError
};

// Identifies the counter-based noise stream for one pixel read.
struct NoiseStream {
    NoiseConfig config;
    std::uint64_t stream = 0; // keyed by pixel id (and frame), never by slot
};

// Four hybrid output fields E_k = (E_s + e^{j k pi/2} E_lo) / 2, with the
// quadrature pair (k = 1, 3) carrying the configured imperfections.
std::array<std::complex<double>, 4> hybrid_outputs(std::complex<double> signal,
                                                   std::complex<double> lo,
                                                   const HybridConfig& cfg);

// Balanced pairs: I = R(|E0|^2 - |E2|^2), Q = R(|E1|^2 - |E3|^2). For the
// ideal hybrid this equals R * (Re, Im) of E_s * conj(E_lo); the direct
// detection terms |E_s|^2 and |E_lo|^2 cancel exactly.
std::pair<double, double> balanced_detect(const std::array<std::complex<double>, 4>& fields,
                                          double responsivity_a_per_w);

using DriftFn = std::function<double(double)>; // phase [rad] vs chirp-local time [s]

// Everything one pixel contributes during one chirp.
struct PixelSimInput {
    std::vector<scene::EchoPath> echoes;
    DriftFn drift;                                      // empty = no drift
    const laser::PhaseNoisePath* phase_noise = nullptr; // shared laser path
    double lo_amplitude = 1.0;
    std::uint32_t pixel = 0;
    std::uint32_t chirp_index = 0;
};

// Simulates the up-sweep beat for one pixel. Per echo the differential phase
// is d(t) = 2 pi f0 tau + 2 pi gamma tau t - pi gamma tau^2 + theta
//           + drift(t) + [phi_n(t) - phi_n(t - tau)],
// the signal field sums the echo phasors, and I/Q follow from the hybrid and
// balanced detection. Additive noise uses the pixel-keyed stream when given.
IqTrace simulate_pixel_beat(const laser::ChirpConfig& chirp, const PixelSimInput& input,
                            const HybridConfig& hybrid, double sample_rate_hz,
                            const NoiseStream* noise = nullptr);

// Adds Gaussian noise to an existing trace from the given stream.
void add_noise(IqTrace& trace, const NoiseStream& noise);

// Minimum sample rate accepted for the largest echo delay.
double required_sample_rate(const laser::ChirpConfig& chirp, double max_delay_s);

// sigma that yields the requested spectral peak SNR (peak power over mean
// noise-floor power) for a tone of the given amplitude under the window.
double sigma_for_peak_snr(double snr_db, double tone_amplitude, dsp::WindowKind window,
                          std::size_t n_samples);

// 10*log10(power at +f_b / power at -f_b) from the complex spectrum of
// I + jQ (hann window). Throws AnalysisError when no peak is detectable.
double image_rejection_ratio(const IqTrace& trace);

} // namespace iqsim::receiver
