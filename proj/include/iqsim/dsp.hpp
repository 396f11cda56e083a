#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "iqsim/iq_trace.hpp"
#include "iqsim/scene.hpp"

namespace iqsim::dsp {

enum class WindowKind { Rect, Hann, Blackman };

WindowKind window_from_name(const std::string& name); // throws ConfigError
std::string window_name(WindowKind kind);

// Sample-wise window application. Periodic window definitions, so the hann
// coherent gain is exactly 0.5.
IqTrace window(const IqTrace& trace, WindowKind kind);

// Mean of the window over n samples (amplitude correction factor).
double coherent_gain(WindowKind kind, std::size_t n);

// Complex spectrum of z = I + jQ. Bins carry the 1/n-scaled forward DFT, so
// an on-bin unit tone has bin magnitude equal to the window coherent gain.
// With that scaling Parseval reads sum|X|^2 == sum|x|^2 / n.
struct Spectrum {
    std::vector<std::complex<double>> bins;
    double bin_hz = 0.0;          // fs / bins.size()
    WindowKind window = WindowKind::Rect;
    double coherent_gain = 1.0;

    std::size_t size() const { return bins.size(); }
    // Signed frequency of bin k: k < n/2 maps to +k*bin_hz, else (k-n)*bin_hz.
    double frequency(std::size_t k) const;
    double power(std::size_t k) const { return std::norm(bins[k]); }
};

// Zero-pads the trace to pad_factor * next_pow2(len) and transforms. The
// window metadata describes the window already applied to the trace; the
// negative-frequency half is retained for image-rejection diagnostics.
Spectrum beat_spectrum(const IqTrace& trace, WindowKind applied_window = WindowKind::Rect,
                       int pad_factor = 2);

// window + beat_spectrum in one call.
Spectrum analyze_trace(const IqTrace& trace, WindowKind kind, int pad_factor = 2);

enum class PeakFlag { Ok, NoPeak, Ambiguous };

struct PeakEstimate {
    double frequency_hz = 0.0;
    double snr_db = 0.0;
    PeakFlag flag = PeakFlag::NoPeak;
};

inline constexpr double kPeakSnrThresholdDb = 6.0;

// Peak pick over the positive-frequency half plus 3-point parabolic
// interpolation on log magnitude. SNR is peak power over median off-peak
// power. Closely spaced tones merge into one reported peak; Ambiguous is set
// when a second resolved peak lies within 1 dB of the strongest.
PeakEstimate estimate_beat_frequency(const Spectrum& spec);

// Local maxima of the positive-frequency magnitude within floor_db of the
// strongest peak, requiring a dip of at least prominence_db between
// neighbors. Used for two-target resolution checks.
std::size_t count_resolved_peaks(const Spectrum& spec, double prominence_db = 3.0,
                                 double floor_db = 15.0);

// R = c * f_b / (2 * gamma).
double range_from_beat(double beat_hz, double slope_hz_per_s);

struct RangeEstimate {
    double range_m = 0.0;
    double beat_hz = 0.0;
    double snr_db = 0.0;
    PeakFlag flag = PeakFlag::NoPeak;
};

struct DepthMap {
    int side = 0;
    std::vector<RangeEstimate> pixels; // row-major, side*side entries
    double slope_hz_per_s = 0.0;
    double sample_rate_hz = 0.0;
    WindowKind window = WindowKind::Hann;
    int pad_factor = 2;

    const RangeEstimate& at(int row, int col) const;
};

struct DspParams {
    WindowKind window = WindowKind::Hann;
    int pad_factor = 2;
};

// Per-pixel pipeline window -> beat_spectrum -> estimate -> range. The frame
// must contain every pixel of an N x N grid exactly once.
DepthMap build_depth_map(const std::vector<IqTrace>& frame, int side,
                         double slope_hz_per_s, const DspParams& params = {});

struct PixelAccuracy {
    double true_range_m = 0.0;
    double mean_error_m = 0.0;
    double sigma_r_m = 0.0;
    double sigma_over_r = 0.0;
    std::size_t valid_frames = 0;
};

struct AccuracyReport {
    int side = 0;
    std::vector<PixelAccuracy> pixels;   // row-major; pixels without truth targets zeroed
    double mean_sigma_r_m = 0.0;         // over pixels with truth targets
    double mean_sigma_over_r = 0.0;
    double bandwidth_hz = 0.0;           // resolution metadata
    double range_resolution_m = 0.0;     // c / (2B)
};

// Repeated-frame statistics against the truth scene. Needs >= 2 maps with
// matching dimensions.
AccuracyReport accuracy_report(const std::vector<DepthMap>& maps,
                               const scene::Scene& truth, double bandwidth_hz);

} // namespace iqsim::dsp
