#include "iqsim/laser.hpp"

#include <cmath>
#include <numbers>

#include "iqsim/errors.hpp"
#include "iqsim/rng.hpp"

namespace iqsim::laser {

void ChirpConfig::validate() const {
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
        throw ConfigError("chirp: bandwidth must be positive and finite");
    }
    if (!(period_s > 0.0) || !std::isfinite(period_s)) {
        throw ConfigError("chirp: period must be positive and finite");
    }
    if (!(start_frequency_hz >= 0.0) || !std::isfinite(start_frequency_hz)) {
        throw ConfigError("chirp: start frequency must be >= 0 and finite");
    }
}

double chirp_slope(const ChirpConfig& cfg) {
    cfg.validate();
    return cfg.bandwidth_hz / cfg.period_s;
}

double chirp_phase(double t_s, const ChirpConfig& cfg) {
    cfg.validate();
    const double T = cfg.period_s;
    double t = t_s;
    if (cfg.direction == ChirpDirection::Triangular) {
        // Fold into [0, 2T): second half retraces the up sweep mirrored.
        t = std::fmod(t, 2.0 * T);
        if (t < 0.0) t += 2.0 * T;
        if (t > T) t = 2.0 * T - t;
    } else if (t < 0.0 || t > T) {
        throw ConfigError("chirp_phase: t outside sweep interval [0, T]");
    }
    const double gamma = cfg.bandwidth_hz / T;
    const double pi = std::numbers::pi;
    if (cfg.direction == ChirpDirection::Down) {
        return 2.0 * pi * (cfg.start_frequency_hz + cfg.bandwidth_hz) * t -
               pi * gamma * t * t;
    }
    return 2.0 * pi * cfg.start_frequency_hz * t + pi * gamma * t * t;
}

void PhaseNoiseConfig::validate() const {
    if (!(linewidth_hz >= 0.0) || !std::isfinite(linewidth_hz)) {
        throw ConfigError("phase noise: linewidth must be >= 0 and finite");
    }
    if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
        throw ConfigError("phase noise: dt must be positive and finite");
    }
}

double PhaseNoisePath::at(double t_s) const {
    if (samples.empty()) return 0.0;
    const double x = t_s / dt_s;
    if (x <= 0.0) return samples.front();
    const auto last = static_cast<double>(samples.size() - 1);
    if (x >= last) return samples.back();
    const auto k = static_cast<std::size_t>(x);
    const double frac = x - static_cast<double>(k);
    return samples[k] + frac * (samples[k + 1] - samples[k]);
}

PhaseNoisePath phase_noise_path(std::size_t n, const PhaseNoiseConfig& cfg,
                                std::uint64_t stream) {
    cfg.validate();
    if (n < 1) throw ConfigError("phase_noise_path: need at least one sample");

    PhaseNoisePath path;
    path.dt_s = cfg.dt_s;
    path.samples.assign(n, 0.0);
    if (cfg.linewidth_hz == 0.0) return path;

    const double sigma = std::sqrt(2.0 * std::numbers::pi * cfg.linewidth_hz * cfg.dt_s);
    const rng::GaussianStream g(cfg.seed, stream);
    for (std::size_t k = 1; k < n; ++k) {
        path.samples[k] = path.samples[k - 1] + sigma * g(k - 1);
    }
    return path;
}

} // namespace iqsim::laser
