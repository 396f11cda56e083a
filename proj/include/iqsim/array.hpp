#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iqsim/iq_trace.hpp"
#include "iqsim/laser.hpp"
#include "iqsim/receiver.hpp"
#include "iqsim/scene.hpp"

namespace iqsim::array {

enum class ReadoutMode { RowColumn, Direct };

ReadoutMode readout_mode_from_name(const std::string& name); // throws ConfigError
std::string readout_mode_name(ReadoutMode mode);

struct ArrayConfig {
    int side = 8;                            // N
    ReadoutMode mode = ReadoutMode::RowColumn;
    double leakage = 0.0;                    // unselected-row column coupling, [0, 1)

    int slots_per_frame() const { return mode == ReadoutMode::RowColumn ? side : 1; }
    void validate() const; // throws ConfigError
};

// Physical wiring count: row-column needs N selects + N reads = 2N; direct
// wiring needs one line per pixel = N^2.
std::size_t interconnect_count(int side, ReadoutMode mode);

struct ReadoutSlot {
    int index = 0;
    int active_row = 0;        // -1 means all rows (direct mode)
    std::vector<int> columns;  // column lines read during the slot
    int chirp_index = 0;
};

struct ReadoutSchedule {
    int side = 0;
    ReadoutMode mode = ReadoutMode::RowColumn;
    double leakage = 0.0; // carried over from ArrayConfig
    std::vector<ReadoutSlot> slots;
};

// Row-column: N slots, slot r selects row r (row-major order) and reads all
// N columns during one full chirp. Direct: a single slot reads every pixel.
ReadoutSchedule build_readout_schedule(const ArrayConfig& cfg);

// Shared per-frame simulation inputs.
struct FrameSimConfig {
    laser::ChirpConfig chirp;
    laser::PhaseNoiseConfig phase_noise; // linewidth 0 disables
    receiver::HybridConfig hybrid;
    receiver::NoiseConfig noise;
    double sample_rate_hz = 0.0;
    double lo_amplitude = 1.0;
    std::uint64_t frame_index = 0;
};

// Stream-id tags keeping the independent noise sources apart.
inline constexpr std::uint64_t kStreamTagPhase = 1;
inline constexpr std::uint64_t kStreamTagPixelNoise = 2;

std::uint64_t phase_noise_stream(std::uint64_t chirp_index, std::uint64_t frame_index);
std::uint64_t pixel_noise_stream(std::uint64_t pixel, std::uint64_t frame_index);

// Simulates one full frame. Per slot, each selected pixel's echoes are
// simulated during that slot's chirp; with leakage L > 0 a read column also
// picks up L times the clean photocurrents of unselected-row pixels in the
// same column. Drift is sampled at the slot start and held for the chirp;
// additive noise streams are keyed by pixel id, never by slot, so direct and
// row-column readouts of the same scene compare bit-exactly at L = 0.
// Traces come back ordered by pixel id.
std::vector<IqTrace> readout_frame(const scene::Scene& scene,
                                   const ReadoutSchedule& schedule,
                                   const FrameSimConfig& cfg,
                                   std::uint64_t noise_master_seed,
                                   int threads = 1);

} // namespace iqsim::array
