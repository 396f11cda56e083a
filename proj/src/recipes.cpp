#include "iqsim/recipes.hpp"

#include "iqsim/errors.hpp"

namespace iqsim::recipes {

namespace {

const std::vector<Recipe> kRecipes = {
    {"paper_8x8_1m",
     "8x8 array, 600 GHz sweep, flood target at 1 m, 4 frames at 30 dB peak SNR",
     "[laser]\n"
     "bandwidth_hz = 600e9\n"
     "period_s = 1e-3\n"
     "linewidth_hz = 0\n"
     "\n"
     "[array]\n"
     "n = 8\n"
     "readout = row-column\n"
     "\n"
     "[noise]\n"
     "snr_db = 30\n"
     "\n"
     "[scene]\n"
     "target = 1.0 1.0 0.0\n"
     "\n"
     "[sampling]\n"
     "fs_hz = 20e6\n"
     "window = hann\n"
     "pad_factor = 2\n"
     "\n"
     "[output]\n"
     "frames = 4\n"
     "seed = 1\n"},

    {"resolution_250um",
     "single pixel, two targets 250 um apart at 1 m, noiseless",
     "[laser]\n"
     "bandwidth_hz = 600e9\n"
     "period_s = 1e-3\n"
     "\n"
     "[array]\n"
     "n = 1\n"
     "readout = direct\n"
     "\n"
     "[scene]\n"
     "pixel_target = 0 0 1.0 1.0 0.0\n"
     "pixel_target = 0 0 1.00025 1.0 0.0\n"
     "\n"
     "[sampling]\n"
     "fs_hz = 20e6\n"
     "window = hann\n"
     "pad_factor = 8\n"
     "\n"
     "[output]\n"
     "frames = 1\n"
     "write_spectra = true\n"
     "seed = 1\n"},

    {"drift_immunity_8x8",
     "8x8 array, flood target at 1 m, +-pi sinusoidal relative-path drift, noiseless",
     "[laser]\n"
     "bandwidth_hz = 600e9\n"
     "period_s = 1e-3\n"
     "\n"
     "[array]\n"
     "n = 8\n"
     "readout = row-column\n"
     "\n"
     "[scene]\n"
     "target = 1.0 1.0 0.0\n"
     "drift = sine:3.141592653589793,125.0\n"
     "\n"
     "[sampling]\n"
     "fs_hz = 20e6\n"
     "window = hann\n"
     "pad_factor = 2\n"
     "\n"
     "[output]\n"
     "frames = 1\n"
     "seed = 1\n"},
};

} // namespace

const std::vector<Recipe>& all() { return kRecipes; }

const Recipe& find(const std::string& name) {
    for (const auto& r : kRecipes) {
        if (r.name == name) return r;
    }
    throw ConfigError("unknown recipe '" + name + "'");
}

} // namespace iqsim::recipes
