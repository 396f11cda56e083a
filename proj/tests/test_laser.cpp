#include <cmath>
#include <numbers>

#include <doctest.h>

#include "iqsim/errors.hpp"
#include "iqsim/laser.hpp"

using namespace iqsim;
using laser::ChirpConfig;
using laser::ChirpDirection;

namespace {
ChirpConfig make_chirp(double b, double t, double f0 = 0.0,
                       ChirpDirection dir = ChirpDirection::Up) {
    return {f0, b, t, dir};
}
} // namespace

TEST_CASE("chirp_slope is B/T") {
    CHECK(laser::chirp_slope(make_chirp(10e9, 1e-3)) == doctest::Approx(1.0e13).epsilon(0));
    CHECK(laser::chirp_slope(make_chirp(600e9, 1e-3)) == doctest::Approx(6.0e17).epsilon(0));
    CHECK_THROWS_AS(laser::chirp_slope(make_chirp(0.0, 1e-3)), ConfigError);
    CHECK_THROWS_AS(laser::chirp_slope(make_chirp(10e9, 0.0)), ConfigError);
}

TEST_CASE("chirp_phase values") {
    const auto cfg = make_chirp(10e9, 1e-3); // gamma = 1e13
    CHECK(laser::chirp_phase(0.0, cfg) == 0.0);
    CHECK(laser::chirp_phase(1e-6, cfg) ==
          doctest::Approx(10.0 * std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(laser::chirp_phase(2e-3, cfg), ConfigError);
    CHECK_THROWS_AS(laser::chirp_phase(-1e-9, cfg), ConfigError);
}

TEST_CASE("finite-difference instantaneous frequency") {
    const auto cfg = make_chirp(10e9, 1e-3); // gamma = 1e13, f0 = 0
    const double t = 0.5e-3;
    const double h = 1e-12;
    const double f = (laser::chirp_phase(t + h, cfg) - laser::chirp_phase(t, cfg)) /
                     (2.0 * std::numbers::pi * h);
    CHECK(f == doctest::Approx(5e9).epsilon(1e-3));
}

TEST_CASE("chirp_phase is exactly quadratic") {
    const auto cfg = make_chirp(10e9, 1e-3, 3e5);
    const double gamma = 1e13;
    const double h = 1e-5;
    for (const double t : {1e-4, 3e-4, 5e-4, 9e-4}) {
        const double d2 = laser::chirp_phase(t + h, cfg) - 2.0 * laser::chirp_phase(t, cfg) +
                          laser::chirp_phase(t - h, cfg);
        CHECK(d2 == doctest::Approx(2.0 * std::numbers::pi * gamma * h * h).epsilon(1e-9));
    }
}

TEST_CASE("triangular chirp folds time") {
    const auto cfg = make_chirp(10e9, 1e-3, 0.0, ChirpDirection::Triangular);
    for (const double x : {1e-5, 2e-4, 4e-4}) {
        CHECK(laser::chirp_phase(1e-3 + x, cfg) ==
              doctest::Approx(laser::chirp_phase(1e-3 - x, cfg)));
    }
    // Full period wraps back to the start.
    CHECK(laser::chirp_phase(2e-3, cfg) == doctest::Approx(laser::chirp_phase(0.0, cfg)));
}

TEST_CASE("phase noise: zero linewidth and determinism") {
    laser::PhaseNoiseConfig cfg{0.0, 42, 1e-9};
    const auto path = laser::phase_noise_path(1000, cfg);
    CHECK(path.samples[0] == 0.0);
    for (const double s : path.samples) CHECK(s == 0.0);

    cfg.linewidth_hz = 1e5;
    const auto a = laser::phase_noise_path(1000, cfg);
    const auto b = laser::phase_noise_path(1000, cfg);
    CHECK(a.samples == b.samples);
    CHECK(a.samples[0] == 0.0);

    cfg.seed = 43;
    const auto c = laser::phase_noise_path(1000, cfg);
    CHECK(a.samples != c.samples);
}

namespace {
struct IncrementStats {
    double var = 0.0;
    double skew = 0.0;
    double ex_kurt = 0.0;
    std::size_t n = 0;
};

IncrementStats increment_stats(const laser::PhaseNoisePath& path) {
    IncrementStats st;
    st.n = path.samples.size() - 1;
    double mean = 0.0;
    for (std::size_t k = 1; k < path.samples.size(); ++k) {
        mean += path.samples[k] - path.samples[k - 1];
    }
    mean /= static_cast<double>(st.n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (std::size_t k = 1; k < path.samples.size(); ++k) {
        const double d = path.samples[k] - path.samples[k - 1] - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(st.n);
    m3 /= static_cast<double>(st.n);
    m4 /= static_cast<double>(st.n);
    st.var = m2;
    st.skew = m3 / std::pow(m2, 1.5);
    st.ex_kurt = m4 / (m2 * m2) - 3.0;
    return st;
}
} // namespace

TEST_CASE("phase noise increment variance matches 2*pi*dv*dt") {
    laser::PhaseNoiseConfig cfg{1e5, 7, 1e-9};
    const auto path = laser::phase_noise_path(1'000'001, cfg);
    const auto st = increment_stats(path);
    const double expected = 2.0 * std::numbers::pi * cfg.linewidth_hz * cfg.dt_s;
    CHECK(st.var == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("phase noise increments pass a Jarque-Bera normality check") {
    laser::PhaseNoiseConfig cfg{1e5, 11, 1e-9};
    const auto path = laser::phase_noise_path(1'000'001, cfg);
    const auto st = increment_stats(path);
    const double jb = static_cast<double>(st.n) / 6.0 *
                      (st.skew * st.skew + st.ex_kurt * st.ex_kurt / 4.0);
    // chi2(2) critical value at p = 0.01.
    CHECK(jb < 9.21);
}

TEST_CASE("quadrupling the linewidth doubles the increment std") {
    laser::PhaseNoiseConfig cfg{1e5, 13, 1e-9};
    const auto a = laser::phase_noise_path(1'000'001, cfg);
    cfg.linewidth_hz *= 4.0;
    const auto b = laser::phase_noise_path(1'000'001, cfg);
    const double ratio =
        std::sqrt(increment_stats(b).var) / std::sqrt(increment_stats(a).var);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("phase noise path interpolation clamps") {
    laser::PhaseNoiseConfig cfg{1e5, 3, 1e-9};
    const auto path = laser::phase_noise_path(100, cfg);
    CHECK(path.at(-1e-9) == path.samples.front());
    CHECK(path.at(1.0) == path.samples.back());
    const double mid = path.at(0.5e-9);
    CHECK(mid == doctest::Approx(0.5 * (path.samples[0] + path.samples[1])));
}

TEST_CASE("phase noise config validation") {
    CHECK_THROWS_AS(laser::phase_noise_path(10, {-1.0, 0, 1e-9}), ConfigError);
    CHECK_THROWS_AS(laser::phase_noise_path(10, {1e5, 0, 0.0}), ConfigError);
    CHECK_THROWS_AS(laser::phase_noise_path(0, {1e5, 0, 1e-9}), ConfigError);
}
