#include "iqsim/array.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "iqsim/errors.hpp"
#include "iqsim/rng.hpp"

namespace iqsim::array {

ReadoutMode readout_mode_from_name(const std::string& name) {
    if (name == "row-column") return ReadoutMode::RowColumn;
    if (name == "direct") return ReadoutMode::Direct;
    throw ConfigError("unknown readout mode '" + name + "' (expected row-column|direct)");
}

std::string readout_mode_name(ReadoutMode mode) {
    return mode == ReadoutMode::RowColumn ? "row-column" : "direct";
}

void ArrayConfig::validate() const {
    if (side < 1) throw ConfigError("array: side must be >= 1");
    if (!(leakage >= 0.0 && leakage < 1.0)) {
        throw ConfigError("array: leakage must lie in [0, 1)");
    }
}

std::size_t interconnect_count(int side, ReadoutMode mode) {
    if (side < 1) throw DomainError("interconnect_count: side must be >= 1");
    const auto n = static_cast<std::size_t>(side);
    return mode == ReadoutMode::RowColumn ? 2 * n : n * n;
}

ReadoutSchedule build_readout_schedule(const ArrayConfig& cfg) {
    cfg.validate();
    ReadoutSchedule sched;
    sched.side = cfg.side;
    sched.mode = cfg.mode;
    sched.leakage = cfg.leakage;

    std::vector<int> all_columns(static_cast<std::size_t>(cfg.side));
    for (int c = 0; c < cfg.side; ++c) all_columns[static_cast<std::size_t>(c)] = c;

    if (cfg.mode == ReadoutMode::Direct) {
        sched.slots.push_back({0, -1, all_columns, 0});
        return sched;
    }
    for (int r = 0; r < cfg.side; ++r) {
        sched.slots.push_back({r, r, all_columns, r});
    }
    return sched;
}

std::uint64_t phase_noise_stream(std::uint64_t chirp_index, std::uint64_t frame_index) {
    return rng::mix64((kStreamTagPhase << 56) ^ (frame_index << 28) ^ chirp_index);
}

std::uint64_t pixel_noise_stream(std::uint64_t pixel, std::uint64_t frame_index) {
    return rng::mix64((kStreamTagPixelNoise << 56) ^ (frame_index << 28) ^ pixel);
}

namespace {

struct PixelJob {
    int slot = 0;
    int row = 0;
    int col = 0;
};

void run_jobs(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t j = 0; j < count; ++j) fn(j);
        return;
    }
    const auto workers = static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t j = w; j < count; j += workers) fn(j);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

std::vector<IqTrace> readout_frame(const scene::Scene& scene,
                                   const ReadoutSchedule& schedule,
                                   const FrameSimConfig& cfg,
                                   std::uint64_t noise_master_seed, int threads) {
    const int n = schedule.side;
    if (n != scene.side()) {
        throw ConfigError("readout_frame: schedule/scene dimension mismatch");
    }
    cfg.chirp.validate();
    cfg.hybrid.validate();
    cfg.noise.validate();

    const auto samples_per_chirp = static_cast<std::size_t>(
        std::llround(cfg.chirp.period_s * cfg.sample_rate_hz));

    // One laser phase-noise realization per chirp slot, shared by all pixels
    // read in that slot.
    std::vector<laser::PhaseNoisePath> noise_paths;
    const bool has_phase_noise = cfg.phase_noise.linewidth_hz > 0.0;
    if (has_phase_noise) {
        laser::PhaseNoiseConfig pn = cfg.phase_noise;
        pn.dt_s = 1.0 / cfg.sample_rate_hz;
        for (const auto& slot : schedule.slots) {
            noise_paths.push_back(laser::phase_noise_path(
                samples_per_chirp + 1, pn,
                phase_noise_stream(static_cast<std::uint64_t>(slot.chirp_index),
                                   cfg.frame_index)));
        }
    }

    std::vector<PixelJob> jobs;
    for (const auto& slot : schedule.slots) {
        for (const int col : slot.columns) {
            if (slot.active_row >= 0) {
                jobs.push_back({slot.index, slot.active_row, col});
            } else {
                for (int r = 0; r < n; ++r) jobs.push_back({slot.index, r, col});
            }
        }
    }
    const auto n_px = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (jobs.size() != n_px) {
        throw ConfigError("readout_frame: schedule does not cover every pixel once");
    }

    std::vector<IqTrace> traces(n_px);
    // Leakage only exists on shared column lines, so it applies to
    // row-column readout; direct wiring gives every pixel its own line.
    const double leakage =
        (schedule.mode == ReadoutMode::RowColumn) ? schedule.leakage : 0.0;

    auto simulate_clean = [&](int row, int col, const ReadoutSlot& slot) {
        const auto pixel = static_cast<std::uint32_t>(row * n + col);
        receiver::PixelSimInput input;
        input.echoes = scene::scene_response(pixel, scene);
        input.lo_amplitude = cfg.lo_amplitude;
        input.pixel = pixel;
        input.chirp_index = static_cast<std::uint32_t>(slot.chirp_index);
        if (has_phase_noise) {
            input.phase_noise = &noise_paths[static_cast<std::size_t>(slot.index)];
        }
        // Drift sampled at slot start and held for the chirp, so TDM frames
        // see it evolve slot to slot while each beat stays a clean tone.
        const double held =
            scene.drift().eval(slot.chirp_index * cfg.chirp.period_s);
        if (held != 0.0) input.drift = [held](double) { return held; };
        return receiver::simulate_pixel_beat(cfg.chirp, input, cfg.hybrid,
                                             cfg.sample_rate_hz, nullptr);
    };

    auto worker = [&](std::size_t j) {
        const PixelJob& job = jobs[j];
        const ReadoutSlot& slot = schedule.slots[static_cast<std::size_t>(job.slot)];
        IqTrace trace = simulate_clean(job.row, job.col, slot);

        if (leakage > 0.0 && slot.active_row >= 0) {
            // The read column also carries a fraction of every unselected
            // row's clean photocurrent in the same column.
            for (int r = 0; r < n; ++r) {
                if (r == slot.active_row) continue;
                if (scene.targets_at(r, job.col).empty()) continue;
                const IqTrace leak = simulate_clean(r, job.col, slot);
                for (std::size_t k = 0; k < trace.size(); ++k) {
                    trace.i[k] += leakage * leak.i[k];
                    trace.q[k] += leakage * leak.q[k];
                }
            }
        }

        receiver::NoiseStream ns;
        ns.config = cfg.noise;
        ns.config.seed = noise_master_seed;
        ns.stream = pixel_noise_stream(trace.pixel, cfg.frame_index);
        receiver::add_noise(trace, ns);
        traces[trace.pixel] = std::move(trace);
    };
    run_jobs(jobs.size(), threads, worker);
    return traces;
}

} // namespace iqsim::array
