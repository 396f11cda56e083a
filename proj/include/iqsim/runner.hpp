#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "iqsim/config.hpp"
#include "iqsim/dsp.hpp"

namespace iqsim::runner {

// Simulates one frame of the configured experiment (scene -> readout ->
// traces). Frame index feeds the per-frame noise streams.
std::vector<IqTrace> simulate_frame(const config::ExperimentConfig& cfg,
                                    std::uint64_t frame_index, int threads = 1);

dsp::DepthMap depth_map_for_frame(const config::ExperimentConfig& cfg,
                                  const std::vector<IqTrace>& frame);

// `simulate` subcommand: writes depth maps (CSV + DMAP), optional spectra and
// trace files, an accuracy report when frames >= 2, and a manifest. Output is
// byte-identical for any thread count and across reruns.
void run_simulate(const config::ExperimentConfig& cfg, const std::string& config_text,
                  const std::filesystem::path& out_dir, int threads = 1);

// `sweep` subcommand: one CSV row per value of the swept parameter.
// Parameters: B | snr | N | leakage | linewidth.
void run_sweep(config::ExperimentConfig cfg, const std::string& config_text,
               const std::string& parameter, const std::vector<double>& values,
               const std::filesystem::path& out_dir, int threads = 1);

// `analyze` subcommand: recomputes the DSP pipeline from a stored trace file.
void run_analyze(const std::filesystem::path& trace_path,
                 const std::filesystem::path& out_dir, const dsp::DspParams& params);

// Two-target resolution probe at the given separation; true when two
// distinct spectral peaks are resolved.
bool resolves_separation(const config::ExperimentConfig& cfg, double range_m,
                         double separation_m);

} // namespace iqsim::runner
