#include "iqsim/scene.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "iqsim/errors.hpp"

namespace iqsim::scene {

void Target::validate() const {
    if (!(range_m > 0.0) || !std::isfinite(range_m)) {
        throw DomainError("target: range must be positive and finite");
    }
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw DomainError("target: reflectivity must lie in [0, 1]");
    }
    if (!std::isfinite(static_phase_rad)) {
        throw DomainError("target: static phase must be finite");
    }
}

double DriftSpec::eval(double t_s) const {
    switch (kind) {
        case Kind::None: return 0.0;
        case Kind::Constant: return offset_rad;
        case Kind::Ramp: return rate_rad_per_s * t_s;
        case Kind::Sine:
            return amplitude_rad *
                   std::sin(2.0 * std::numbers::pi * frequency_hz * t_s + offset_rad);
        case Kind::Replay: return replay ? replay->at(t_s) : 0.0;
    }
    return 0.0;
}

Scene::Scene(int n_side) : n_(n_side) {
    if (n_side < 1) throw DomainError("scene: array side must be >= 1");
    pixels_.resize(static_cast<std::size_t>(n_side) * n_side);
}

void Scene::add_target(int row, int col, const Target& t) {
    t.validate();
    if (row < 0 || row >= n_ || col < 0 || col >= n_) {
        throw std::out_of_range("scene: pixel index out of bounds");
    }
    pixels_[static_cast<std::size_t>(row) * n_ + col].push_back(t);
}

void Scene::add_flood_target(const Target& t) {
    t.validate();
    for (auto& px : pixels_) px.push_back(t);
}

const std::vector<Target>& Scene::targets_at(std::size_t pixel_index) const {
    if (pixel_index >= pixels_.size()) {
        throw std::out_of_range("scene: pixel index out of bounds");
    }
    return pixels_[pixel_index];
}

const std::vector<Target>& Scene::targets_at(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_) {
        throw std::out_of_range("scene: pixel index out of bounds");
    }
    return pixels_[static_cast<std::size_t>(row) * n_ + col];
}

double round_trip_delay(double range_m) {
    if (range_m < 0.0 || !std::isfinite(range_m)) {
        throw DomainError("round_trip_delay: range must be >= 0 and finite");
    }
    return 2.0 * range_m / kSpeedOfLight;
}

double beat_frequency(double range_m, double slope_hz_per_s) {
    return slope_hz_per_s * round_trip_delay(range_m);
}

std::vector<EchoPath> scene_response(std::size_t pixel_index, const Scene& scene) {
    const auto& targets = scene.targets_at(pixel_index);
    std::vector<EchoPath> echoes;
    echoes.reserve(targets.size());
    for (const auto& t : targets) {
        echoes.push_back({round_trip_delay(t.range_m), t.reflectivity, t.static_phase_rad});
    }
    return echoes;
}

} // namespace iqsim::scene
