#include "iqsim/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "iqsim/errors.hpp"
#include "iqsim/fft.hpp"

namespace iqsim::dsp {

namespace {

constexpr double kLogFloor = 1e-300; // guard for log of exact-zero bins

double window_sample(WindowKind kind, std::size_t k, std::size_t n) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    switch (kind) {
        case WindowKind::Rect: return 1.0;
        case WindowKind::Hann: return 0.5 * (1.0 - std::cos(x));
        case WindowKind::Blackman:
            return 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
    }
    return 1.0;
}

} // namespace

WindowKind window_from_name(const std::string& name) {
    if (name == "rect") return WindowKind::Rect;
    if (name == "hann") return WindowKind::Hann;
    if (name == "blackman") return WindowKind::Blackman;
    throw ConfigError("unknown window kind '" + name + "' (expected rect|hann|blackman)");
}

std::string window_name(WindowKind kind) {
    switch (kind) {
        case WindowKind::Rect: return "rect";
        case WindowKind::Hann: return "hann";
        case WindowKind::Blackman: return "blackman";
    }
    return "rect";
}

IqTrace window(const IqTrace& trace, WindowKind kind) {
    if (trace.size() == 0) throw AnalysisError("window: empty trace");
    if (kind == WindowKind::Rect) return trace;
    IqTrace out = trace;
    const std::size_t n = trace.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double w = window_sample(kind, k, n);
        out.i[k] *= w;
        out.q[k] *= w;
    }
    return out;
}

double coherent_gain(WindowKind kind, std::size_t n) {
    switch (kind) {
        case WindowKind::Rect: return 1.0;
        case WindowKind::Hann: return 0.5;   // periodic hann mean is exact
        case WindowKind::Blackman: return 0.42;
    }
    (void)n;
    return 1.0;
}

double Spectrum::frequency(std::size_t k) const {
    const std::size_t n = bins.size();
    const auto kk = static_cast<double>(k);
    return (k < n / 2) ? kk * bin_hz : (kk - static_cast<double>(n)) * bin_hz;
}

Spectrum beat_spectrum(const IqTrace& trace, WindowKind applied_window, int pad_factor) {
    const std::size_t n = trace.size();
    if (n < 8) throw AnalysisError("beat_spectrum: trace too short (need >= 8 samples)");
    if (trace.i.size() != trace.q.size()) {
        throw FrameError("beat_spectrum: I/Q length mismatch");
    }
    if (pad_factor < 1 || (pad_factor & (pad_factor - 1)) != 0) {
        throw ConfigError("beat_spectrum: pad factor must be a power of two >= 1");
    }

    const std::size_t n_fft = fft::next_pow2(n) * static_cast<std::size_t>(pad_factor);
    std::vector<std::complex<double>> data(n_fft, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) data[k] = {trace.i[k], trace.q[k]};
    fft::transform(data);

    const double scale = 1.0 / static_cast<double>(n_fft);
    for (auto& b : data) b *= scale;

    Spectrum spec;
    spec.bins = std::move(data);
    spec.bin_hz = trace.sample_rate_hz / static_cast<double>(n_fft);
    spec.window = applied_window;
    spec.coherent_gain = coherent_gain(applied_window, n);
    return spec;
}

Spectrum analyze_trace(const IqTrace& trace, WindowKind kind, int pad_factor) {
    return beat_spectrum(window(trace, kind), kind, pad_factor);
}

namespace {

// Positive-frequency half is [0, n/2]; bin 0 wraps its left neighbor.
struct PeakSearch {
    std::size_t bin = 0;
    double delta = 0.0;     // sub-bin offset in (-0.5, 0.5)
    double power = 0.0;
    double median_floor = 0.0;
};

PeakSearch locate_peak(const Spectrum& spec) {
    const std::size_t n = spec.size();
    const std::size_t half = n / 2;

    std::size_t k_star = 0;
    double p_star = -1.0;
    for (std::size_t k = 0; k <= half; ++k) {
        const double p = spec.power(k);
        if (p > p_star) {
            p_star = p;
            k_star = k;
        }
    }

    // Median off-peak power, excluding +-3 bins around the peak.
    std::vector<double> rest;
    rest.reserve(half);
    for (std::size_t k = 0; k <= half; ++k) {
        const std::size_t d = (k > k_star) ? k - k_star : k_star - k;
        if (d > 3) rest.push_back(spec.power(k));
    }
    double median = 0.0;
    if (!rest.empty()) {
        const auto mid = rest.begin() + static_cast<std::ptrdiff_t>(rest.size() / 2);
        std::nth_element(rest.begin(), mid, rest.end());
        median = *mid;
    }

    // Parabolic interpolation on log magnitude; neighbors wrap modulo n.
    const std::size_t left = (k_star == 0) ? n - 1 : k_star - 1;
    const std::size_t right = (k_star + 1) % n;
    const double lc = std::log(std::max(std::abs(spec.bins[k_star]), kLogFloor));
    const double ll = std::log(std::max(std::abs(spec.bins[left]), kLogFloor));
    const double lr = std::log(std::max(std::abs(spec.bins[right]), kLogFloor));
    const double denom = ll - 2.0 * lc + lr;
    double delta = 0.0;
    if (std::abs(denom) > 1e-12 * std::max({std::abs(ll), std::abs(lc), 1.0})) {
        delta = 0.5 * (ll - lr) / denom;
    }
    if (!(delta > -0.5 && delta < 0.5)) delta = 0.0;

    return {k_star, delta, p_star, median};
}

std::vector<std::size_t> resolved_peak_bins(const Spectrum& spec, double prominence_db,
                                            double floor_db) {
    const std::size_t half = spec.size() / 2;
    double p_max = 0.0;
    for (std::size_t k = 0; k <= half; ++k) p_max = std::max(p_max, spec.power(k));
    if (p_max <= 0.0) return {};
    const double floor = p_max * std::pow(10.0, -floor_db / 10.0);
    const double dip_ratio = std::pow(10.0, -prominence_db / 10.0);

    // Strict local maxima above the floor.
    std::vector<std::size_t> cands;
    for (std::size_t k = 1; k + 1 <= half; ++k) {
        const double p = spec.power(k);
        if (p >= floor && p > spec.power(k - 1) && p >= spec.power(k + 1)) {
            cands.push_back(k);
        }
    }

    // Merge neighbors lacking a sufficient valley between them.
    std::vector<std::size_t> peaks;
    for (const std::size_t k : cands) {
        if (peaks.empty()) {
            peaks.push_back(k);
            continue;
        }
        const std::size_t prev = peaks.back();
        double valley = spec.power(prev);
        for (std::size_t m = prev; m <= k; ++m) valley = std::min(valley, spec.power(m));
        const double ref = std::min(spec.power(prev), spec.power(k));
        if (valley <= ref * dip_ratio) {
            peaks.push_back(k);
        } else if (spec.power(k) > spec.power(prev)) {
            peaks.back() = k;
        }
    }
    return peaks;
}

} // namespace

PeakEstimate estimate_beat_frequency(const Spectrum& spec) {
    if (spec.size() < 8) throw AnalysisError("estimate_beat_frequency: spectrum too short");
    const PeakSearch peak = locate_peak(spec);

    PeakEstimate est;
    est.frequency_hz = (static_cast<double>(peak.bin) + peak.delta) * spec.bin_hz;

    if (peak.median_floor > 0.0) {
        est.snr_db = 10.0 * std::log10(peak.power / peak.median_floor);
    } else {
        est.snr_db = (peak.power > 0.0) ? 300.0 : 0.0; // noiseless floor
    }

    if (peak.power <= 0.0 || est.snr_db < kPeakSnrThresholdDb) {
        est.flag = PeakFlag::NoPeak;
        return est;
    }

    est.flag = PeakFlag::Ok;
    const auto peaks = resolved_peak_bins(spec, 3.0, 15.0);
    if (peaks.size() >= 2) {
        // Two resolved peaks of comparable power: ambiguous pixel.
        std::vector<double> powers;
        for (const auto k : peaks) powers.push_back(spec.power(k));
        std::sort(powers.rbegin(), powers.rend());
        if (powers[1] >= powers[0] * std::pow(10.0, -0.1)) {
            est.flag = PeakFlag::Ambiguous;
        }
    }
    return est;
}

std::size_t count_resolved_peaks(const Spectrum& spec, double prominence_db,
                                 double floor_db) {
    return resolved_peak_bins(spec, prominence_db, floor_db).size();
}

double range_from_beat(double beat_hz, double slope_hz_per_s) {
    if (!(slope_hz_per_s > 0.0)) {
        throw DomainError("range_from_beat: slope must be positive");
    }
    return scene::kSpeedOfLight * beat_hz / (2.0 * slope_hz_per_s);
}

const RangeEstimate& DepthMap::at(int row, int col) const {
    if (row < 0 || row >= side || col < 0 || col >= side) {
        throw std::out_of_range("depth map: pixel out of bounds");
    }
    return pixels[static_cast<std::size_t>(row) * side + col];
}

DepthMap build_depth_map(const std::vector<IqTrace>& frame, int side,
                         double slope_hz_per_s, const DspParams& params) {
    const auto n_px = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
    if (side < 1) throw DomainError("build_depth_map: side must be >= 1");
    if (frame.size() != n_px) {
        throw FrameError("build_depth_map: incomplete frame (" +
                         std::to_string(frame.size()) + " traces for " +
                         std::to_string(n_px) + " pixels)");
    }

    DepthMap map;
    map.side = side;
    map.slope_hz_per_s = slope_hz_per_s;
    map.window = params.window;
    map.pad_factor = params.pad_factor;
    map.pixels.resize(n_px);

    std::vector<bool> seen(n_px, false);
    for (const auto& trace : frame) {
        if (trace.pixel >= n_px || seen[trace.pixel]) {
            throw FrameError("build_depth_map: duplicate or out-of-range pixel " +
                             std::to_string(trace.pixel));
        }
        seen[trace.pixel] = true;
        map.sample_rate_hz = trace.sample_rate_hz;

        const Spectrum spec = analyze_trace(trace, params.window, params.pad_factor);
        const PeakEstimate est = estimate_beat_frequency(spec);
        RangeEstimate& out = map.pixels[trace.pixel];
        out.beat_hz = est.frequency_hz;
        out.snr_db = est.snr_db;
        out.flag = est.flag;
        out.range_m = (est.flag == PeakFlag::NoPeak)
                          ? 0.0
                          : range_from_beat(est.frequency_hz, slope_hz_per_s);
    }
    return map;
}

AccuracyReport accuracy_report(const std::vector<DepthMap>& maps,
                               const scene::Scene& truth, double bandwidth_hz) {
    if (maps.size() < 2) {
        throw FrameError("accuracy_report: need >= 2 repeated depth maps");
    }
    const int side = maps.front().side;
    if (side != truth.side()) {
        throw FrameError("accuracy_report: depth map / scene dimension mismatch");
    }
    for (const auto& m : maps) {
        if (m.side != side) throw FrameError("accuracy_report: depth map dimension mismatch");
    }

    AccuracyReport rep;
    rep.side = side;
    rep.bandwidth_hz = bandwidth_hz;
    rep.range_resolution_m = scene::kSpeedOfLight / (2.0 * bandwidth_hz);
    rep.pixels.resize(static_cast<std::size_t>(side) * side);

    double sum_sigma = 0.0;
    double sum_ratio = 0.0;
    std::size_t n_truth = 0;
    for (std::size_t px = 0; px < rep.pixels.size(); ++px) {
        const auto& targets = truth.targets_at(px);
        PixelAccuracy& acc = rep.pixels[px];
        if (targets.empty()) continue;
        acc.true_range_m = targets.front().range_m;

        double sum = 0.0, sum2 = 0.0;
        std::size_t n = 0;
        for (const auto& m : maps) {
            const RangeEstimate& est = m.pixels[px];
            if (est.flag == PeakFlag::NoPeak) continue;
            sum += est.range_m;
            sum2 += est.range_m * est.range_m;
            ++n;
        }
        acc.valid_frames = n;
        if (n >= 2) {
            const double mean = sum / static_cast<double>(n);
            const double var =
                std::max(0.0, (sum2 - sum * mean) / static_cast<double>(n - 1));
            acc.mean_error_m = mean - acc.true_range_m;
            acc.sigma_r_m = std::sqrt(var);
            acc.sigma_over_r = acc.sigma_r_m / acc.true_range_m;
            sum_sigma += acc.sigma_r_m;
            sum_ratio += acc.sigma_over_r;
            ++n_truth;
        }
    }
    if (n_truth > 0) {
        rep.mean_sigma_r_m = sum_sigma / static_cast<double>(n_truth);
        rep.mean_sigma_over_r = sum_ratio / static_cast<double>(n_truth);
    }
    return rep;
}

} // namespace iqsim::dsp
