#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "iqsim/dsp.hpp"
#include "iqsim/errors.hpp"
#include "iqsim/receiver.hpp"
#include "iqsim/rng.hpp"
#include "iqsim/scene.hpp"

using namespace iqsim;
using std::complex;

namespace {

const receiver::HybridConfig kIdeal{0.0, 0.0, 1.0};

complex<double> random_field(std::uint64_t stream, std::uint64_t k) {
    return {2.0 * rng::uniform01(stream, 2 * k) - 1.0,
            2.0 * rng::uniform01(stream, 2 * k + 1) - 1.0};
}

laser::ChirpConfig chirp_for_slope(double gamma, double period = 1e-3) {
    return {0.0, gamma * period, period, laser::ChirpDirection::Up};
}

} // namespace

TEST_CASE("hybrid outputs, ideal cases") {
    const auto dark = receiver::hybrid_outputs({0.0, 0.0}, {1.0, 0.0}, kIdeal);
    for (int k = 0; k < 4; ++k) {
        const auto expected = 0.5 * std::polar(1.0, k * std::numbers::pi / 2.0);
        CHECK(std::abs(dark[k] - expected) < 1e-15);
    }

    const auto both = receiver::hybrid_outputs({1.0, 0.0}, {1.0, 0.0}, kIdeal);
    CHECK(std::abs(both[0] - complex<double>(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(both[1] - complex<double>(0.5, 0.5)) < 1e-15);
    CHECK(std::abs(both[2]) < 1e-15);
    CHECK(std::abs(both[3] - complex<double>(0.5, -0.5)) < 1e-15);
}

TEST_CASE("ideal hybrid conserves power") {
    for (std::uint64_t k = 0; k < 200; ++k) {
        const auto es = random_field(10, k);
        const auto lo = random_field(11, k);
        const auto fields = receiver::hybrid_outputs(es, lo, kIdeal);
        double total = 0.0;
        for (const auto& f : fields) total += std::norm(f);
        CHECK(total == doctest::Approx(0.5 * (std::norm(es) + std::norm(lo))).epsilon(1e-12));
    }
}

TEST_CASE("balanced detection basics") {
    const auto a = receiver::balanced_detect(
        receiver::hybrid_outputs({1.0, 0.0}, {1.0, 0.0}, kIdeal), 1.0);
    CHECK(a.first == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.second == doctest::Approx(0.0).epsilon(1e-14));

    const auto b = receiver::balanced_detect(
        receiver::hybrid_outputs({0.0, 1.0}, {1.0, 0.0}, kIdeal), 1.0);
    CHECK(b.first == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(b.second == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("carrier suppression: no LO-only term survives") {
    for (std::uint64_t k = 0; k < 50; ++k) {
        const auto lo = 10.0 * random_field(12, k);
        const auto [i, q] =
            receiver::balanced_detect(receiver::hybrid_outputs({0.0, 0.0}, lo, kIdeal), 2.5);
        CHECK(i == 0.0);
        CHECK(q == 0.0);
    }
}

TEST_CASE("conjugate-phase identity on random field pairs") {
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const auto es = random_field(13, k);
        const auto lo = random_field(14, k);
        const double rpd = 0.8;
        const auto [i, q] =
            receiver::balanced_detect(receiver::hybrid_outputs(es, lo, kIdeal), rpd);
        const auto z = rpd * es * std::conj(lo);
        CHECK(std::abs(complex<double>(i, q) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("zero-delay beat is a constant phasor of the expected power") {
    receiver::PixelSimInput input;
    input.echoes = {{0.0, 0.7, 0.3}};
    const auto trace =
        receiver::simulate_pixel_beat(chirp_for_slope(1e13), input, kIdeal, 1e6, nullptr);
    REQUIRE(trace.size() == 1000);
    const double p0 = trace.i[0] * trace.i[0] + trace.q[0] * trace.q[0];
    CHECK(p0 == doctest::Approx(0.7 * 0.7).epsilon(1e-12));
    for (std::size_t k = 1; k < trace.size(); ++k) {
        CHECK(trace.i[k] == doctest::Approx(trace.i[0]).epsilon(1e-12));
        CHECK(trace.q[k] == doctest::Approx(trace.q[0]).epsilon(1e-12));
    }
}

TEST_CASE("beat peak lands at gamma*tau") {
    receiver::PixelSimInput input;
    input.echoes = {{scene::round_trip_delay(1.0), 1.0, 0.0}};
    const auto trace =
        receiver::simulate_pixel_beat(chirp_for_slope(1e13), input, kIdeal, 1e6, nullptr);
    const auto est =
        dsp::estimate_beat_frequency(dsp::analyze_trace(trace, dsp::WindowKind::Hann, 2));
    CHECK(est.flag == dsp::PeakFlag::Ok);
    CHECK(std::abs(est.frequency_hz - 66712.819) < 1000.0); // within one 1 kHz bin
}

TEST_CASE("spectral location for random range/slope pairs") {
    for (std::uint64_t k = 0; k < 100; ++k) {
        const double r = 0.5 + 40.0 * rng::uniform01(20, k);
        const double gamma = 5e12 + 1e13 * rng::uniform01(21, k);
        const double fs = 2e7;
        receiver::PixelSimInput input;
        input.echoes = {{scene::round_trip_delay(r), 1.0, 0.0}};
        const auto trace = receiver::simulate_pixel_beat(chirp_for_slope(gamma), input,
                                                         kIdeal, fs, nullptr);
        const auto spec = dsp::analyze_trace(trace, dsp::WindowKind::Hann, 2);
        const auto est = dsp::estimate_beat_frequency(spec);
        CHECK(est.flag == dsp::PeakFlag::Ok);
        CHECK(std::abs(est.frequency_hz - scene::beat_frequency(r, gamma)) <=
              trace.sample_rate_hz / 20000.0); // one unpadded bin (n = 20000)
    }
}

TEST_CASE("drift leaves the IQ magnitude untouched sample-wise") {
    receiver::PixelSimInput plain;
    plain.echoes = {{scene::round_trip_delay(2.0), 0.9, 0.1}};
    const auto ref =
        receiver::simulate_pixel_beat(chirp_for_slope(1e13), plain, kIdeal, 1e6, nullptr);

    receiver::PixelSimInput drifting = plain;
    drifting.drift = [](double t) {
        return 1.234 + std::numbers::pi * std::sin(2.0 * std::numbers::pi * 300.0 * t);
    };
    const auto moved = receiver::simulate_pixel_beat(chirp_for_slope(1e13), drifting,
                                                     kIdeal, 1e6, nullptr);
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const double m0 = std::hypot(ref.i[k], ref.q[k]);
        const double m1 = std::hypot(moved.i[k], moved.q[k]);
        CHECK(std::abs(m1 - m0) <= 1e-12 * m0);
    }
}

TEST_CASE("undersampled beat is rejected with the required rate") {
    receiver::PixelSimInput input;
    input.echoes = {{scene::round_trip_delay(1.0), 1.0, 0.0}};
    try {
        receiver::simulate_pixel_beat(chirp_for_slope(6e17), input, kIdeal, 1e6, nullptr);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("need fs >") != std::string::npos);
    }
}

TEST_CASE("image rejection: ideal, phase error, and single-quadrature") {
    receiver::PixelSimInput input;
    input.echoes = {{scene::round_trip_delay(1.0), 1.0, 0.0}};
    const auto chirp = chirp_for_slope(1e13);

    const auto ideal = receiver::simulate_pixel_beat(chirp, input, kIdeal, 1e6, nullptr);
    CHECK(receiver::image_rejection_ratio(ideal) >= 80.0);

    const receiver::HybridConfig skewed{0.1, 0.0, 1.0};
    const auto trace = receiver::simulate_pixel_beat(chirp, input, skewed, 1e6, nullptr);
    const double irr = receiver::image_rejection_ratio(trace);
    const double predicted = 10.0 * std::log10(std::pow(1.0 / std::tan(0.05), 2.0));
    CHECK(irr == doctest::Approx(predicted).epsilon(0.5 / predicted));
    CHECK(irr == doctest::Approx(26.0).epsilon(0.5 / 26.0));

    auto real_only = ideal;
    for (auto& q : real_only.q) q = 0.0;
    CHECK(receiver::image_rejection_ratio(real_only) == doctest::Approx(0.0).epsilon(0.01));

    IqTrace silent;
    silent.i.assign(1024, 0.0);
    silent.q.assign(1024, 0.0);
    silent.sample_rate_hz = 1e6;
    CHECK_THROWS_AS(receiver::image_rejection_ratio(silent), AnalysisError);
}

TEST_CASE("gain imbalance alone also bounds the image rejection") {
    receiver::PixelSimInput input;
    input.echoes = {{scene::round_trip_delay(1.0), 1.0, 0.0}};
    const receiver::HybridConfig lopsided{0.0, 0.2, 1.0};
    const auto trace = receiver::simulate_pixel_beat(chirp_for_slope(1e13), input,
                                                     lopsided, 1e6, nullptr);
    // IRR = |1+g|^2 / |1-g|^2 with Q gain g = 1.2.
    const double predicted = 10.0 * std::log10(std::pow(2.2 / 0.2, 2.0));
    CHECK(receiver::image_rejection_ratio(trace) ==
          doctest::Approx(predicted).epsilon(0.5 / predicted));
}

TEST_CASE("additive noise streams are reproducible and pixel-keyed") {
    receiver::NoiseStream ns;
    ns.config = {0.01, 99};
    ns.stream = 7;

    IqTrace a;
    a.i.assign(256, 0.0);
    a.q.assign(256, 0.0);
    a.sample_rate_hz = 1e6;
    IqTrace b = a;
    receiver::add_noise(a, ns);
    receiver::add_noise(b, ns);
    CHECK(a.i == b.i);
    CHECK(a.q == b.q);

    IqTrace c;
    c.i.assign(256, 0.0);
    c.q.assign(256, 0.0);
    c.sample_rate_hz = 1e6;
    ns.stream = 8;
    receiver::add_noise(c, ns);
    CHECK(a.i != c.i);
}

TEST_CASE("sigma_for_peak_snr lands near the requested SNR") {
    const double snr_db = 30.0;
    const std::size_t n = 4096;
    const double sigma =
        receiver::sigma_for_peak_snr(snr_db, 1.0, dsp::WindowKind::Hann, n);
    CHECK(sigma > 0.0);

    IqTrace trace;
    trace.sample_rate_hz = 1e6;
    trace.i.resize(n);
    trace.q.resize(n);
    const double f = 200.5 * trace.sample_rate_hz / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ph = 2.0 * std::numbers::pi * f * static_cast<double>(k) / 1e6;
        trace.i[k] = std::cos(ph);
        trace.q[k] = std::sin(ph);
    }
    receiver::NoiseStream ns;
    ns.config = {sigma, 4};
    receiver::add_noise(trace, ns);
    const auto est =
        dsp::estimate_beat_frequency(dsp::analyze_trace(trace, dsp::WindowKind::Hann, 1));
    // Median-based floor sits a constant ~1.6 dB under the mean; allow slack.
    CHECK(est.snr_db == doctest::Approx(snr_db).epsilon(0.15));
}

TEST_CASE("hybrid config validation") {
    CHECK_THROWS_AS(receiver::HybridConfig{2.0, 0.0, 1.0}.validate(), ConfigError);
    CHECK_THROWS_AS(receiver::HybridConfig{0.0, -1.5, 1.0}.validate(), ConfigError);
    CHECK_THROWS_AS(receiver::HybridConfig{0.0, 0.0, 0.0}.validate(), ConfigError);
    CHECK_THROWS_AS(receiver::NoiseConfig{-0.1, 0}.validate(), ConfigError);
}
