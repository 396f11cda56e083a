#include "iqsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "iqsim/errors.hpp"

namespace iqsim::config {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, std::size_t line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& v, std::size_t line) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        fail(line, "expected an unsigned integer, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& v, std::size_t line) {
    const double d = to_double(v, line);
    if (d != std::floor(d)) fail(line, "expected an integer, got '" + v + "'");
    return static_cast<int>(d);
}

bool to_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "expected true|false, got '" + v + "'");
}

std::vector<std::string> split_ws(const std::string& v) {
    std::istringstream in(v);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

scene::Target parse_target_fields(const std::vector<std::string>& f, std::size_t base,
                                  std::size_t line) {
    scene::Target t;
    t.range_m = to_double(f[base], line);
    if (f.size() > base + 1) t.reflectivity = to_double(f[base + 1], line);
    if (f.size() > base + 2) t.static_phase_rad = to_double(f[base + 2], line);
    return t;
}

scene::DriftSpec parse_drift(const std::string& v, std::size_t line) {
    scene::DriftSpec d;
    const auto colon = v.find(':');
    const std::string kind = v.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = v.substr(colon + 1);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        for (const auto& tok : split_ws(rest)) args.push_back(to_double(tok, line));
    }

    if (kind == "none") {
        d.kind = scene::DriftSpec::Kind::None;
    } else if (kind == "constant") {
        if (args.size() != 1) fail(line, "drift constant takes one value: constant:RAD");
        d.kind = scene::DriftSpec::Kind::Constant;
        d.offset_rad = args[0];
    } else if (kind == "ramp") {
        if (args.size() != 1) fail(line, "drift ramp takes one value: ramp:RAD_PER_S");
        d.kind = scene::DriftSpec::Kind::Ramp;
        d.rate_rad_per_s = args[0];
    } else if (kind == "sine") {
        if (args.size() < 2 || args.size() > 3) {
            fail(line, "drift sine takes sine:AMP_RAD,FREQ_HZ[,PHASE_RAD]");
        }
        d.kind = scene::DriftSpec::Kind::Sine;
        d.amplitude_rad = args[0];
        d.frequency_hz = args[1];
        if (args.size() == 3) d.offset_rad = args[2];
    } else {
        fail(line, "unknown drift kind '" + kind + "' (expected none|constant|ramp|sine)");
    }
    return d;
}

} // namespace

scene::Scene ExperimentConfig::build_scene() const {
    scene::Scene sc(array.side);
    for (const auto& t : flood_targets) sc.add_flood_target(t);
    for (const auto& pt : pixel_targets) sc.add_target(pt.row, pt.col, pt.target);
    sc.set_drift(drift);
    return sc;
}

double ExperimentConfig::max_target_range_m() const {
    double r = 0.0;
    for (const auto& t : flood_targets) r = std::max(r, t.range_m);
    for (const auto& pt : pixel_targets) r = std::max(r, pt.target.range_m);
    return r;
}

double ExperimentConfig::resolved_noise_sigma() const {
    if (!noise_snr_db.has_value()) return noise_sigma;
    double rho = 0.0;
    for (const auto& t : flood_targets) rho = std::max(rho, t.reflectivity);
    for (const auto& pt : pixel_targets) rho = std::max(rho, pt.target.reflectivity);
    if (rho == 0.0) return 0.0; // empty scene: SNR is undefined, stay noiseless
    const double amp = hybrid.responsivity_a_per_w * rho; // LO amplitude is 1
    const auto n = static_cast<std::size_t>(std::llround(chirp.period_s * sample_rate_hz));
    return receiver::sigma_for_peak_snr(*noise_snr_db, amp, window, n);
}

void ExperimentConfig::validate() const {
    chirp.validate();
    hybrid.validate();
    array.validate();
    if (linewidth_hz < 0.0) throw ConfigError("laser.linewidth_hz must be >= 0");
    if (noise_sigma < 0.0) throw ConfigError("noise.sigma must be >= 0");
    if (frames < 1) throw ConfigError("output.frames must be >= 1");
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sampling.fs_hz must be positive");
    if (pad_factor < 1 || (pad_factor & (pad_factor - 1)) != 0) {
        throw ConfigError("sampling.pad_factor must be a power of two >= 1");
    }
    for (const auto& pt : pixel_targets) {
        if (pt.row < 0 || pt.row >= array.side || pt.col < 0 || pt.col >= array.side) {
            throw ConfigError("scene.pixel_target out of bounds for N=" +
                              std::to_string(array.side));
        }
    }

    const double r_max = max_target_range_m();
    if (r_max > 0.0) {
        const double tau = scene::round_trip_delay(r_max);
        if (tau >= chirp.period_s) {
            throw ConfigError("scene: round-trip delay exceeds chirp period");
        }
        const double fs_min = receiver::required_sample_rate(chirp, tau);
        if (sample_rate_hz <= fs_min) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", fs_min);
            throw ConfigError(std::string("sampling.fs_hz too low for the farthest "
                                          "target: need fs > ") + buf + " Hz");
        }
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    cfg.window = dsp::WindowKind::Hann;

    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find_first_of("#;");
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"laser", "hybrid", "noise",   "array",
                                          "scene", "sampling", "output"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail(line_no, "key '" + key + "' outside any section");
        if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

        if (section == "laser") {
            if (key == "f0_hz") cfg.chirp.start_frequency_hz = to_double(value, line_no);
            else if (key == "bandwidth_hz") cfg.chirp.bandwidth_hz = to_double(value, line_no);
            else if (key == "period_s") cfg.chirp.period_s = to_double(value, line_no);
            else if (key == "direction") {
                if (value == "up") cfg.chirp.direction = laser::ChirpDirection::Up;
                else if (value == "down") cfg.chirp.direction = laser::ChirpDirection::Down;
                else if (value == "triangular")
                    cfg.chirp.direction = laser::ChirpDirection::Triangular;
                else fail(line_no, "direction must be up|down|triangular");
            } else if (key == "linewidth_hz") cfg.linewidth_hz = to_double(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [laser]");
        } else if (section == "hybrid") {
            if (key == "phase_error_rad") cfg.hybrid.phase_error_rad = to_double(value, line_no);
            else if (key == "amplitude_imbalance")
                cfg.hybrid.amplitude_imbalance = to_double(value, line_no);
            else if (key == "responsivity_a_per_w")
                cfg.hybrid.responsivity_a_per_w = to_double(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [hybrid]");
        } else if (section == "noise") {
            if (key == "sigma") cfg.noise_sigma = to_double(value, line_no);
            else if (key == "snr_db") cfg.noise_snr_db = to_double(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [noise]");
        } else if (section == "array") {
            if (key == "n") cfg.array.side = to_int(value, line_no);
            else if (key == "readout") cfg.array.mode = array::readout_mode_from_name(value);
            else if (key == "leakage") cfg.array.leakage = to_double(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [array]");
        } else if (section == "scene") {
            if (key == "target") {
                const auto f = split_ws(value);
                if (f.empty() || f.size() > 3) {
                    fail(line_no, "target takes: RANGE_M [REFLECTIVITY [PHASE_RAD]]");
                }
                cfg.flood_targets.push_back(parse_target_fields(f, 0, line_no));
            } else if (key == "pixel_target") {
                const auto f = split_ws(value);
                if (f.size() < 3 || f.size() > 5) {
                    fail(line_no,
                         "pixel_target takes: ROW COL RANGE_M [REFLECTIVITY [PHASE_RAD]]");
                }
                PixelTarget pt;
                pt.row = to_int(f[0], line_no);
                pt.col = to_int(f[1], line_no);
                pt.target = parse_target_fields(f, 2, line_no);
                cfg.pixel_targets.push_back(pt);
            } else if (key == "drift") {
                cfg.drift = parse_drift(value, line_no);
            } else {
                fail(line_no, "unknown key '" + key + "' in [scene]");
            }
        } else if (section == "sampling") {
            if (key == "fs_hz") cfg.sample_rate_hz = to_double(value, line_no);
            else if (key == "window") cfg.window = dsp::window_from_name(value);
            else if (key == "pad_factor") cfg.pad_factor = to_int(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [sampling]");
        } else if (section == "output") {
            if (key == "frames") cfg.frames = to_int(value, line_no);
            else if (key == "write_spectra") cfg.write_spectra = to_bool(value, line_no);
            else if (key == "write_traces") cfg.write_traces = to_bool(value, line_no);
            else if (key == "seed") cfg.seed = to_u64(value, line_no);
            else fail(line_no, "unknown key '" + key + "' in [output]");
        }
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace iqsim::config
