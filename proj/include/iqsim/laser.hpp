#pragma once

#include <cstdint>
#include <vector>

namespace iqsim::laser {

enum class ChirpDirection { Up, Down, Triangular };

// Linear FMCW sweep description. f0 is normally 0 so the simulation runs at
// baseband sample rates; coherent detection depends only on phase
// differences, so the optical carrier never needs to be sampled.
struct ChirpConfig {
    double start_frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    double period_s = 0.0;
    ChirpDirection direction = ChirpDirection::Up;

    void validate() const; // throws ConfigError
};

// Sweep slope gamma = B / T in Hz/s.
double chirp_slope(const ChirpConfig& cfg);

// Instantaneous sweep phase phi(t) = 2*pi*f0*t + pi*gamma*t^2 on the up
// sweep. Down sweeps mirror the frequency ramp; triangular sweeps fold t
// into [0, 2T) analytically. For up/down, t must lie in [0, T].
double chirp_phase(double t_s, const ChirpConfig& cfg);

// Laser phase noise: Wiener process with increment variance 2*pi*dv*dt
// (Lorentzian line of full width dv).
struct PhaseNoiseConfig {
    double linewidth_hz = 0.0;
    std::uint64_t seed = 0;
    double dt_s = 0.0;

    void validate() const; // throws ConfigError
};

struct PhaseNoisePath {
    std::vector<double> samples; // radians, samples[0] == 0
    double dt_s = 0.0;

    // Linear interpolation, clamped to the sampled interval.
    double at(double t_s) const;
};

// Deterministic realization: same (seed, stream, linewidth, dt, n) gives a
// bit-identical path regardless of evaluation order elsewhere.
PhaseNoisePath phase_noise_path(std::size_t n, const PhaseNoiseConfig& cfg,
                                std::uint64_t stream = 0);

} // namespace iqsim::laser
