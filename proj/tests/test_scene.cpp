#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "iqsim/errors.hpp"
#include "iqsim/rng.hpp"
#include "iqsim/scene.hpp"

using namespace iqsim;

TEST_CASE("round_trip_delay") {
    CHECK(scene::round_trip_delay(0.0) == 0.0);
    CHECK(scene::round_trip_delay(1.0) == 2.0 / 299792458.0);
    CHECK(scene::round_trip_delay(299792458.0 / 2.0) == 1.0);
    CHECK_THROWS_AS(scene::round_trip_delay(-1.0), DomainError);
}

TEST_CASE("beat_frequency") {
    CHECK(scene::beat_frequency(1.0, 1e13) == doctest::Approx(66712.819).epsilon(1e-6));
    CHECK(scene::beat_frequency(0.0, 1e13) == 0.0);
    CHECK(scene::beat_frequency(2.0, 1e13) == 2.0 * scene::beat_frequency(1.0, 1e13));
}

TEST_CASE("beat_frequency equals slope times delay for random inputs") {
    for (std::uint64_t k = 0; k < 200; ++k) {
        const double r = 0.1 + 100.0 * rng::uniform01(1, k);
        const double gamma = 1e10 + 1e17 * rng::uniform01(2, k);
        const double fb = scene::beat_frequency(r, gamma);
        const double ref = gamma * scene::round_trip_delay(r);
        CHECK(fb == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("target validation") {
    CHECK_THROWS_AS(scene::Target{-1.0, 1.0, 0.0}.validate(), DomainError);
    CHECK_THROWS_AS(scene::Target{1.0, 1.5, 0.0}.validate(), DomainError);
    CHECK_NOTHROW(scene::Target{1.0, 0.5, 0.2}.validate());
}

TEST_CASE("scene_response") {
    scene::Scene sc(2);
    sc.add_target(0, 1, {1.0, 1.0, 0.0});
    sc.add_target(1, 0, {2.0, 0.5, 0.3});
    sc.add_target(1, 0, {3.0, 0.25, -0.1});

    CHECK(scene::scene_response(0, sc).empty());

    const auto single = scene::scene_response(1, sc); // pixel (0,1)
    REQUIRE(single.size() == 1);
    CHECK(single[0].delay_s == doctest::Approx(6.67128e-9).epsilon(1e-5));
    CHECK(single[0].amplitude == 1.0);
    CHECK(single[0].static_phase_rad == 0.0);

    const auto pair = scene::scene_response(2, sc); // pixel (1,0)
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].delay_s < pair[1].delay_s); // insertion order preserved

    CHECK_THROWS_AS(scene::scene_response(4, sc), std::out_of_range);

    // Pure lookup: repeated calls identical.
    const auto again = scene::scene_response(2, sc);
    CHECK(again[0].delay_s == pair[0].delay_s);
    CHECK(again[1].amplitude == pair[1].amplitude);
}

TEST_CASE("flood targets reach every pixel") {
    scene::Scene sc(3);
    sc.add_flood_target({1.5, 0.8, 0.1});
    for (std::size_t px = 0; px < sc.pixel_count(); ++px) {
        REQUIRE(sc.targets_at(px).size() == 1);
        CHECK(sc.targets_at(px)[0].range_m == 1.5);
    }
}

TEST_CASE("drift models") {
    scene::DriftSpec none;
    CHECK(none.eval(0.123) == 0.0);

    scene::DriftSpec constant;
    constant.kind = scene::DriftSpec::Kind::Constant;
    constant.offset_rad = 1.234;
    CHECK(constant.eval(5.0) == 1.234);

    scene::DriftSpec ramp;
    ramp.kind = scene::DriftSpec::Kind::Ramp;
    ramp.rate_rad_per_s = 2.0;
    CHECK(ramp.eval(0.5) == doctest::Approx(1.0));

    scene::DriftSpec sine;
    sine.kind = scene::DriftSpec::Kind::Sine;
    sine.amplitude_rad = std::numbers::pi;
    sine.frequency_hz = 1.0;
    CHECK(sine.eval(0.25) == doctest::Approx(std::numbers::pi));
    CHECK(sine.eval(0.0) == doctest::Approx(0.0));

    laser::PhaseNoiseConfig pn{1e5, 5, 1e-6};
    auto path = std::make_shared<laser::PhaseNoisePath>(laser::phase_noise_path(100, pn));
    scene::DriftSpec replay;
    replay.kind = scene::DriftSpec::Kind::Replay;
    replay.replay = path;
    CHECK(replay.eval(3e-6) == path->at(3e-6));
}
