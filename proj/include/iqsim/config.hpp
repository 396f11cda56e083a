#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iqsim/array.hpp"
#include "iqsim/dsp.hpp"
#include "iqsim/laser.hpp"
#include "iqsim/receiver.hpp"
#include "iqsim/scene.hpp"

namespace iqsim::config {

struct PixelTarget {
    int row = 0;
    int col = 0;
    scene::Target target;
};

// Fully validated experiment description parsed from the flat-section config
// format documented in the README ([laser], [hybrid], [noise], [array],
// [scene], [sampling], [output]).
struct ExperimentConfig {
    laser::ChirpConfig chirp;
    double linewidth_hz = 0.0;

    receiver::HybridConfig hybrid;

    double noise_sigma = 0.0;
    std::optional<double> noise_snr_db; // overrides sigma when set

    array::ArrayConfig array;

    std::vector<scene::Target> flood_targets;
    std::vector<PixelTarget> pixel_targets;
    scene::DriftSpec drift;

    double sample_rate_hz = 0.0;
    int pad_factor = 2;
    dsp::WindowKind window = dsp::WindowKind::Hann;

    int frames = 1;
    bool write_spectra = false;
    bool write_traces = false;
    std::uint64_t seed = 0;

    scene::Scene build_scene() const;
    double max_target_range_m() const;

    // Additive-noise sigma, resolving snr_db against the strongest target
    // amplitude and the configured window/trace length.
    double resolved_noise_sigma() const;

    // Cross-field validation, including the sampling precondition; the
    // undersampling message names the minimum acceptable fs.
    void validate() const;
};

// Parses and validates config text. Unknown sections or keys are rejected
// with their line number.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config_file(const std::string& path);

} // namespace iqsim::config
