#include "iqsim/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "iqsim/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

namespace iqsim::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t get_u32(std::ifstream& in, const std::string& path) {
    std::uint32_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
        throw IoError("truncated file: " + path);
    }
    return v;
}

double get_f64(std::ifstream& in, const std::string& path) {
    double v = 0.0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
        throw IoError("truncated file: " + path);
    }
    return v;
}

const char* flag_name(dsp::PeakFlag flag) {
    switch (flag) {
        case dsp::PeakFlag::Ok: return "ok";
        case dsp::PeakFlag::NoPeak: return "no-peak";
        case dsp::PeakFlag::Ambiguous: return "ambiguous";
    }
    return "no-peak";
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_depth_map_csv(const dsp::DepthMap& map, const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "row,col,range_m,beat_hz,snr_db,flag\n";
    for (int r = 0; r < map.side; ++r) {
        for (int c = 0; c < map.side; ++c) {
            const auto& px = map.at(r, c);
            out << r << ',' << c << ',' << format_double(px.range_m) << ','
                << format_double(px.beat_hz) << ',' << format_double(px.snr_db) << ','
                << flag_name(px.flag) << '\n';
        }
    }
}

void write_depth_map_bin(const dsp::DepthMap& map, const std::filesystem::path& path) {
    auto out = open_out(path, true);
    out.write("DMAP", 4);
    put_u32(out, static_cast<std::uint32_t>(map.side));
    put_u32(out, 0);
    put_u32(out, 0);
    for (const auto& px : map.pixels) {
        put_f64(out, px.flag == dsp::PeakFlag::NoPeak
                         ? std::numeric_limits<double>::quiet_NaN()
                         : px.range_m);
    }
}

std::vector<double> read_depth_map_bin(const std::filesystem::path& path, int& side_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "DMAP", 4) != 0) {
        throw IoError("not a DMAP file: " + path.string());
    }
    side_out = static_cast<int>(get_u32(in, path.string()));
    get_u32(in, path.string());
    get_u32(in, path.string());
    std::vector<double> ranges(static_cast<std::size_t>(side_out) * side_out);
    for (auto& r : ranges) r = get_f64(in, path.string());
    return ranges;
}

void write_spectrum_csv(const dsp::Spectrum& spec, const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "frequency_hz,magnitude_db,phase_rad\n";
    const std::size_t n = spec.size();
    auto emit = [&](std::size_t k) {
        const double mag = std::abs(spec.bins[k]);
        const double db = 20.0 * std::log10(std::max(mag, 1e-300));
        out << format_double(spec.frequency(k)) << ',' << format_double(db) << ','
            << format_double(std::arg(spec.bins[k])) << '\n';
    };
    for (std::size_t k = n / 2; k < n; ++k) emit(k); // negative half, ascending
    for (std::size_t k = 0; k < n / 2; ++k) emit(k);
}

void write_trace_file(const TraceFile& file, const std::filesystem::path& path) {
    auto out = open_out(path, true);
    const std::uint32_t samples =
        file.traces.empty() ? 0 : static_cast<std::uint32_t>(file.traces.front().size());
    out.write("IQTR", 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(file.side));
    put_u32(out, static_cast<std::uint32_t>(file.traces.size()));
    put_u32(out, samples);
    put_u32(out, 0);
    put_f64(out, file.sample_rate_hz);
    put_f64(out, file.slope_hz_per_s);
    for (const auto& t : file.traces) {
        if (t.size() != samples) throw IoError("trace length mismatch writing " + path.string());
        put_u32(out, t.pixel);
        put_u32(out, t.chirp_index);
        out.write(reinterpret_cast<const char*>(t.i.data()),
                  static_cast<std::streamsize>(samples * sizeof(double)));
        out.write(reinterpret_cast<const char*>(t.q.data()),
                  static_cast<std::streamsize>(samples * sizeof(double)));
    }
}

TraceFile read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "IQTR", 4) != 0) {
        throw IoError("not an IQTR file: " + path.string());
    }
    const std::uint32_t version = get_u32(in, path.string());
    if (version != 1) throw IoError("unsupported IQTR version in " + path.string());

    TraceFile file;
    file.side = static_cast<int>(get_u32(in, path.string()));
    const std::uint32_t count = get_u32(in, path.string());
    const std::uint32_t samples = get_u32(in, path.string());
    get_u32(in, path.string());
    file.sample_rate_hz = get_f64(in, path.string());
    file.slope_hz_per_s = get_f64(in, path.string());

    file.traces.resize(count);
    for (auto& t : file.traces) {
        t.pixel = get_u32(in, path.string());
        t.chirp_index = get_u32(in, path.string());
        t.sample_rate_hz = file.sample_rate_hz;
        t.i.resize(samples);
        t.q.resize(samples);
        if (!in.read(reinterpret_cast<char*>(t.i.data()),
                     static_cast<std::streamsize>(samples * sizeof(double))) ||
            !in.read(reinterpret_cast<char*>(t.q.data()),
                     static_cast<std::streamsize>(samples * sizeof(double)))) {
            throw IoError("truncated file: " + path.string());
        }
    }
    return file;
}

void write_accuracy_csv(const dsp::AccuracyReport& rep, const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "row,col,true_range_m,mean_error_m,sigma_r_m,sigma_over_r,valid_frames\n";
    for (int r = 0; r < rep.side; ++r) {
        for (int c = 0; c < rep.side; ++c) {
            const auto& px = rep.pixels[static_cast<std::size_t>(r) * rep.side + c];
            out << r << ',' << c << ',' << format_double(px.true_range_m) << ','
                << format_double(px.mean_error_m) << ',' << format_double(px.sigma_r_m)
                << ',' << format_double(px.sigma_over_r) << ',' << px.valid_frames << '\n';
        }
    }
}

void write_accuracy_summary_csv(const dsp::AccuracyReport& rep,
                                const std::filesystem::path& path) {
    auto out = open_out(path, false);
    out << "mean_sigma_r_m,mean_sigma_over_r,bandwidth_hz,range_resolution_m\n";
    out << format_double(rep.mean_sigma_r_m) << ',' << format_double(rep.mean_sigma_over_r)
        << ',' << format_double(rep.bandwidth_hz) << ','
        << format_double(rep.range_resolution_m) << '\n';
}

void write_manifest(const std::filesystem::path& path, const std::string& config_text,
                    std::uint64_t seed, const std::vector<std::string>& artifacts) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = config_text;
    j["artifacts"] = artifacts;
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    auto out = open_out(path, true); // binary: no newline translation
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace iqsim::io
