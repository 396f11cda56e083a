#include "iqsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "iqsim/array.hpp"
#include "iqsim/errors.hpp"
#include "iqsim/io.hpp"
#include "iqsim/receiver.hpp"
#include "iqsim/rng.hpp"

namespace iqsim::runner {

namespace {

std::string frame_name(const char* stem, std::uint64_t frame, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03llu.%s", stem,
                  static_cast<unsigned long long>(frame), ext);
    return buf;
}

array::FrameSimConfig frame_sim_config(const config::ExperimentConfig& cfg,
                                       std::uint64_t frame_index) {
    array::FrameSimConfig sim;
    sim.chirp = cfg.chirp;
    sim.phase_noise.linewidth_hz = cfg.linewidth_hz;
    sim.phase_noise.seed = rng::make_key(cfg.seed, 1); // laser noise sub-seed
    sim.phase_noise.dt_s = 1.0 / cfg.sample_rate_hz;
    sim.hybrid = cfg.hybrid;
    sim.noise.sigma = cfg.resolved_noise_sigma();
    sim.noise.seed = 0; // master seed enters via readout_frame
    sim.sample_rate_hz = cfg.sample_rate_hz;
    sim.frame_index = frame_index;
    return sim;
}

} // namespace

std::vector<IqTrace> simulate_frame(const config::ExperimentConfig& cfg,
                                    std::uint64_t frame_index, int threads) {
    const scene::Scene sc = cfg.build_scene();
    const auto schedule = array::build_readout_schedule(cfg.array);
    return array::readout_frame(sc, schedule, frame_sim_config(cfg, frame_index),
                                rng::make_key(cfg.seed, 2), threads);
}

dsp::DepthMap depth_map_for_frame(const config::ExperimentConfig& cfg,
                                  const std::vector<IqTrace>& frame) {
    const dsp::DspParams params{cfg.window, cfg.pad_factor};
    return dsp::build_depth_map(frame, cfg.array.side, laser::chirp_slope(cfg.chirp),
                                params);
}

void run_simulate(const config::ExperimentConfig& cfg, const std::string& config_text,
                  const std::filesystem::path& out_dir, int threads) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    const double slope = laser::chirp_slope(cfg.chirp);
    std::vector<std::string> artifacts;
    std::vector<dsp::DepthMap> maps;

    for (std::uint64_t f = 0; f < static_cast<std::uint64_t>(cfg.frames); ++f) {
        const auto traces = simulate_frame(cfg, f, threads);
        const auto map = depth_map_for_frame(cfg, traces);

        const std::string csv = frame_name("depth_map", f, "csv");
        const std::string bin = frame_name("depth_map", f, "dmap");
        io::write_depth_map_csv(map, out_dir / csv);
        io::write_depth_map_bin(map, out_dir / bin);
        artifacts.push_back(csv);
        artifacts.push_back(bin);

        if (cfg.write_traces) {
            io::TraceFile tf;
            tf.side = cfg.array.side;
            tf.sample_rate_hz = cfg.sample_rate_hz;
            tf.slope_hz_per_s = slope;
            tf.traces = traces;
            const std::string name = frame_name("traces", f, "iqtr");
            io::write_trace_file(tf, out_dir / name);
            artifacts.push_back(name);
        }
        if (cfg.write_spectra && f == 0) {
            for (const auto& t : traces) {
                const auto spec = dsp::analyze_trace(t, cfg.window, cfg.pad_factor);
                char buf[64];
                std::snprintf(buf, sizeof(buf), "spectrum_p%03u.csv", t.pixel);
                io::write_spectrum_csv(spec, out_dir / buf);
                artifacts.emplace_back(buf);
            }
        }
        maps.push_back(map);
    }

    if (cfg.frames >= 2) {
        const auto report =
            dsp::accuracy_report(maps, cfg.build_scene(), cfg.chirp.bandwidth_hz);
        io::write_accuracy_csv(report, out_dir / "accuracy.csv");
        io::write_accuracy_summary_csv(report, out_dir / "accuracy_summary.csv");
        artifacts.emplace_back("accuracy.csv");
        artifacts.emplace_back("accuracy_summary.csv");
    }

    std::sort(artifacts.begin(), artifacts.end());
    io::write_manifest(out_dir / "manifest.json", config_text, cfg.seed, artifacts);
}

bool resolves_separation(const config::ExperimentConfig& cfg, double range_m,
                         double separation_m) {
    receiver::PixelSimInput input;
    input.echoes = {
        {scene::round_trip_delay(range_m), 1.0, 0.0},
        {scene::round_trip_delay(range_m + separation_m), 1.0, 0.0},
    };
    const IqTrace trace = receiver::simulate_pixel_beat(cfg.chirp, input, cfg.hybrid,
                                                        cfg.sample_rate_hz, nullptr);
    // Dense zero-padding so closely spaced maxima and the valley between
    // them are actually sampled.
    const auto spec = dsp::analyze_trace(trace, dsp::WindowKind::Hann, 8);
    return dsp::count_resolved_peaks(spec) >= 2;
}

void run_sweep(config::ExperimentConfig cfg, const std::string& config_text,
               const std::string& parameter, const std::vector<double>& values,
               const std::filesystem::path& out_dir, int threads) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    static const char* known[] = {"B", "snr", "N", "leakage", "linewidth"};
    if (std::find(std::begin(known), std::end(known), parameter) == std::end(known)) {
        throw ConfigError("sweep: unknown parameter '" + parameter +
                          "' (expected B|snr|N|leakage|linewidth)");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    std::string csv =
        "value,sigma_r_m,sigma_over_r,resolution_ok,irr_db,interconnects_rowcol,"
        "interconnects_direct\n";

    for (const double v : values) {
        config::ExperimentConfig point = cfg;
        if (parameter == "B") point.chirp.bandwidth_hz = v;
        else if (parameter == "snr") point.noise_snr_db = v;
        else if (parameter == "N") point.array.side = static_cast<int>(v);
        else if (parameter == "leakage") point.array.leakage = v;
        else point.linewidth_hz = v;
        point.frames = std::max(point.frames, 2);
        point.validate();

        std::vector<dsp::DepthMap> maps;
        for (std::uint64_t f = 0; f < static_cast<std::uint64_t>(point.frames); ++f) {
            maps.push_back(depth_map_for_frame(point, simulate_frame(point, f, threads)));
        }
        const auto report =
            dsp::accuracy_report(maps, point.build_scene(), point.chirp.bandwidth_hz);

        const double probe_range = std::max(point.max_target_range_m(), 1.0);
        const double res = report.range_resolution_m;
        const bool resolution_ok = resolves_separation(point, probe_range, res) &&
                                   !resolves_separation(point, probe_range, 0.25 * res);

        receiver::PixelSimInput irr_input;
        irr_input.echoes = {{scene::round_trip_delay(probe_range), 1.0, 0.0}};
        const double irr = receiver::image_rejection_ratio(receiver::simulate_pixel_beat(
            point.chirp, irr_input, point.hybrid, point.sample_rate_hz, nullptr));

        csv += io::format_double(v) + ',' + io::format_double(report.mean_sigma_r_m) +
               ',' + io::format_double(report.mean_sigma_over_r) + ',' +
               (resolution_ok ? "pass" : "fail") + ',' + io::format_double(irr) + ',' +
               std::to_string(array::interconnect_count(point.array.side,
                                                        array::ReadoutMode::RowColumn)) +
               ',' +
               std::to_string(array::interconnect_count(point.array.side,
                                                        array::ReadoutMode::Direct)) +
               '\n';
    }

    io::write_text_file(out_dir / "sweep.csv", csv);
    io::write_manifest(out_dir / "manifest.json", config_text, cfg.seed,
                       {"sweep.csv"});
}

void run_analyze(const std::filesystem::path& trace_path,
                 const std::filesystem::path& out_dir, const dsp::DspParams& params) {
    const io::TraceFile file = io::read_trace_file(trace_path);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    const auto map =
        dsp::build_depth_map(file.traces, file.side, file.slope_hz_per_s, params);
    io::write_depth_map_csv(map, out_dir / "depth_map_000.csv");
    io::write_depth_map_bin(map, out_dir / "depth_map_000.dmap");
    io::write_manifest(out_dir / "manifest.json",
                       "analyze: " + trace_path.filename().string(), 0,
                       {"depth_map_000.csv", "depth_map_000.dmap"});
}

} // namespace iqsim::runner
