#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "iqsim/dsp.hpp"
#include "iqsim/iq_trace.hpp"

namespace iqsim::io {

inline constexpr const char* kToolName = "iqsim";
inline constexpr const char* kToolVersion = "1.0.0";

// Deterministic shortest-round-trip formatting for doubles; identical input
// always produces identical bytes.
std::string format_double(double v);

// Depth map as row-major CSV: row,col,range_m,beat_hz,snr_db,flag.
void write_depth_map_csv(const dsp::DepthMap& map, const std::filesystem::path& path);

// Binary form: 16-byte header (magic "DMAP", u32 N, two reserved u32), then
// N*N little-endian f64 ranges row-major; no-peak pixels are NaN.
void write_depth_map_bin(const dsp::DepthMap& map, const std::filesystem::path& path);
std::vector<double> read_depth_map_bin(const std::filesystem::path& path, int& side_out);

// Spectrum CSV: frequency_hz,magnitude_db,phase_rad (full signed axis,
// negative half first in ascending frequency order).
void write_spectrum_csv(const dsp::Spectrum& spec, const std::filesystem::path& path);

// Frame trace container: header magic "IQTR", u32 version, u32 N, u32 trace
// count, u32 samples per trace, u32 reserved, f64 fs, f64 chirp slope; then
// per trace u32 pixel, u32 chirp index, samples f64 I, samples f64 Q. All
// little-endian.
struct TraceFile {
    int side = 0;
    double sample_rate_hz = 0.0;
    double slope_hz_per_s = 0.0;
    std::vector<IqTrace> traces;
};

void write_trace_file(const TraceFile& file, const std::filesystem::path& path);
TraceFile read_trace_file(const std::filesystem::path& path);

void write_accuracy_csv(const dsp::AccuracyReport& rep, const std::filesystem::path& path);
void write_accuracy_summary_csv(const dsp::AccuracyReport& rep,
                                const std::filesystem::path& path);

// Reproducibility manifest: tool name/version, master seed, the verbatim
// config text, and the artifact list. No timestamps, so reruns are
// byte-identical.
void write_manifest(const std::filesystem::path& path, const std::string& config_text,
                    std::uint64_t seed, const std::vector<std::string>& artifacts);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace iqsim::io
