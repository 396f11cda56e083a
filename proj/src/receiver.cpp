#include "iqsim/receiver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "iqsim/errors.hpp"
#include "iqsim/rng.hpp"

namespace iqsim::receiver {

namespace {
constexpr double kPi = std::numbers::pi;

std::string fmt_hz(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}
} // namespace

void HybridConfig::validate() const {
    if (!(std::abs(phase_error_rad) < kPi / 2.0)) {
        throw ConfigError("hybrid: |phase error| must be < pi/2");
    }
    if (!(amplitude_imbalance > -1.0) || !std::isfinite(amplitude_imbalance)) {
        throw ConfigError("hybrid: amplitude imbalance must be > -1");
    }
    if (!(responsivity_a_per_w > 0.0)) {
        throw ConfigError("hybrid: responsivity must be positive");
    }
}

void NoiseConfig::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("noise: sigma must be >= 0 and finite");
    }
}

std::array<std::complex<double>, 4> hybrid_outputs(std::complex<double> signal,
                                                   std::complex<double> lo,
                                                   const HybridConfig& cfg) {
    cfg.validate();
    const double q_gain = std::sqrt(1.0 + cfg.amplitude_imbalance);
    const std::complex<double> eps = std::polar(1.0, cfg.phase_error_rad);

    std::array<std::complex<double>, 4> out;
    for (int k = 0; k < 4; ++k) {
        std::complex<double> lo_phase = std::polar(1.0, k * kPi / 2.0);
        std::complex<double> field = 0.5 * (signal + lo_phase * lo);
        if (k % 2 == 1) {
            // Quadrature branch: LO port phase offset plus field gain whose
            // square gives the (1 + alpha) photocurrent gain.
            field = q_gain * 0.5 * (signal + lo_phase * eps * lo);
        }
        out[static_cast<std::size_t>(k)] = field;
    }
    return out;
}

std::pair<double, double> balanced_detect(const std::array<std::complex<double>, 4>& fields,
                                          double responsivity_a_per_w) {
    const double i = responsivity_a_per_w * (std::norm(fields[0]) - std::norm(fields[2]));
    const double q = responsivity_a_per_w * (std::norm(fields[1]) - std::norm(fields[3]));
    return {i, q};
}

double required_sample_rate(const laser::ChirpConfig& chirp, double max_delay_s) {
    const double gamma = laser::chirp_slope(chirp);
    return 2.0 * gamma * max_delay_s * (1.0 + kSamplingMargin);
}

IqTrace simulate_pixel_beat(const laser::ChirpConfig& chirp, const PixelSimInput& input,
                            const HybridConfig& hybrid, double sample_rate_hz,
                            const NoiseStream* noise) {
    chirp.validate();
    hybrid.validate();
    if (!(sample_rate_hz > 0.0)) {
        throw ConfigError("simulate_pixel_beat: sample rate must be positive");
    }

    const double gamma = chirp.bandwidth_hz / chirp.period_s;
    double tau_max = 0.0;
    for (const auto& e : input.echoes) {
        if (e.delay_s < 0.0) throw DomainError("simulate_pixel_beat: negative echo delay");
        if (e.delay_s >= chirp.period_s) {
            throw ConfigError("simulate_pixel_beat: echo delay exceeds chirp period");
        }
        tau_max = std::max(tau_max, e.delay_s);
    }
    const double fs_min = required_sample_rate(chirp, tau_max);
    if (sample_rate_hz <= fs_min) {
        throw ConfigError("simulate_pixel_beat: undersampled beat; need fs > " +
                          fmt_hz(fs_min) + " Hz (got " + fmt_hz(sample_rate_hz) + " Hz)");
    }

    const auto n = static_cast<std::size_t>(std::llround(chirp.period_s * sample_rate_hz));
    IqTrace trace;
    trace.sample_rate_hz = sample_rate_hz;
    trace.pixel = input.pixel;
    trace.chirp_index = input.chirp_index;
    trace.i.resize(n);
    trace.q.resize(n);

    const std::complex<double> lo(input.lo_amplitude, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / sample_rate_hz;
        const double drift = input.drift ? input.drift(t) : 0.0;
        const double noise_now =
            input.phase_noise ? input.phase_noise->at(t) : 0.0;

        std::complex<double> signal(0.0, 0.0);
        for (const auto& e : input.echoes) {
            double phase = 2.0 * kPi * chirp.start_frequency_hz * e.delay_s +
                           2.0 * kPi * gamma * e.delay_s * t -
                           kPi * gamma * e.delay_s * e.delay_s + e.static_phase_rad +
                           drift;
            if (input.phase_noise) {
                phase += noise_now - input.phase_noise->at(t - e.delay_s);
            }
            signal += std::polar(e.amplitude, phase);
        }

        const auto fields = hybrid_outputs(signal, lo, hybrid);
        const auto [i, q] = balanced_detect(fields, hybrid.responsivity_a_per_w);
        trace.i[k] = i;
        trace.q[k] = q;
    }

    if (noise != nullptr) add_noise(trace, *noise);
    return trace;
}

void add_noise(IqTrace& trace, const NoiseStream& noise) {
    noise.config.validate();
    if (noise.config.sigma == 0.0) return;
    const rng::GaussianStream g(noise.config.seed, noise.stream);
    // Counters 2k / 2k+1 keep I and Q independent per sample.
    for (std::size_t k = 0; k < trace.size(); ++k) {
        trace.i[k] += noise.config.sigma * g(2 * k);
        trace.q[k] += noise.config.sigma * g(2 * k + 1);
    }
}

double sigma_for_peak_snr(double snr_db, double tone_amplitude, dsp::WindowKind window,
                          std::size_t n_samples) {
    if (n_samples == 0) throw ConfigError("sigma_for_peak_snr: empty window");
    double sum_w = 0.0, sum_w2 = 0.0;
    IqTrace ones;
    ones.i.assign(n_samples, 1.0);
    ones.q.assign(n_samples, 0.0);
    ones.sample_rate_hz = 1.0;
    const IqTrace w = dsp::window(ones, window);
    for (std::size_t k = 0; k < n_samples; ++k) {
        sum_w += w.i[k];
        sum_w2 += w.i[k] * w.i[k];
    }
    // Peak power A^2 (sum w)^2 / n^2 over mean noise bin power
    // 2 sigma^2 (sum w^2) / n^2.
    const double snr = std::pow(10.0, snr_db / 10.0);
    return tone_amplitude * sum_w / std::sqrt(2.0 * snr * sum_w2);
}

double image_rejection_ratio(const IqTrace& trace) {
    const dsp::Spectrum spec = dsp::analyze_trace(trace, dsp::WindowKind::Hann, 2);
    const dsp::PeakEstimate est = dsp::estimate_beat_frequency(spec);
    if (est.flag == dsp::PeakFlag::NoPeak) {
        throw AnalysisError("image_rejection_ratio: no detectable peak");
    }

    const std::size_t n = spec.size();
    const auto k_star =
        static_cast<std::size_t>(std::llround(est.frequency_hz / spec.bin_hz));
    const std::size_t mirror = (n - k_star) % n;

    constexpr std::size_t kWidth = 6; // +-6 padded bins around each tone
    auto band_power = [&](std::size_t center) {
        double p = 0.0;
        for (std::size_t d = 0; d <= kWidth; ++d) {
            p += spec.power((center + d) % n);
            if (d > 0) p += spec.power((center + n - d) % n);
        }
        return p;
    };

    const double p_plus = band_power(k_star);
    const double p_minus = band_power(mirror);
    return 10.0 * std::log10(p_plus / std::max(p_minus, 1e-300));
}

} // namespace iqsim::receiver
