#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "iqsim/laser.hpp"

namespace iqsim::scene {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Ideal point reflector seen by one pixel.
struct Target {
    double range_m = 0.0;
    double reflectivity = 1.0;    // amplitude factor in [0, 1]
    double static_phase_rad = 0.0;

    void validate() const; // throws DomainError
};

// Echo parameters handed to the receiver model.
struct EchoPath {
    double delay_s = 0.0;
    double amplitude = 0.0;
    double static_phase_rad = 0.0;
};

// Relative signal/reference path phase disturbance. This is the non-ideality
// the IQ receiver must be immune to.
struct DriftSpec {
    enum class Kind { None, Constant, Ramp, Sine, Replay };

    Kind kind = Kind::None;
    double offset_rad = 0.0;      // Constant / Sine phase offset
    double rate_rad_per_s = 0.0;  // Ramp
    double amplitude_rad = 0.0;   // Sine
    double frequency_hz = 0.0;    // Sine
    std::shared_ptr<const laser::PhaseNoisePath> replay; // Replay

    double eval(double t_s) const;
};

// N x N grid of per-pixel target lists plus a global drift function.
class Scene {
public:
    explicit Scene(int n_side);

    int side() const { return n_; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(n_) * n_; }

    void add_target(int row, int col, const Target& t);
    void add_flood_target(const Target& t); // same target for every pixel

    const std::vector<Target>& targets_at(std::size_t pixel_index) const;
    const std::vector<Target>& targets_at(int row, int col) const;

    void set_drift(DriftSpec d) { drift_ = std::move(d); }
    const DriftSpec& drift() const { return drift_; }

private:
    int n_;
    std::vector<std::vector<Target>> pixels_; // row-major
    DriftSpec drift_;
};

// tau = 2R/c.
double round_trip_delay(double range_m);

// f_b = gamma * tau = 2 * gamma * R / c.
double beat_frequency(double range_m, double slope_hz_per_s);

// One EchoPath per target at the pixel, in insertion order.
std::vector<EchoPath> scene_response(std::size_t pixel_index, const Scene& scene);

} // namespace iqsim::scene
