#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iqsim/config.hpp"
#include "iqsim/errors.hpp"
#include "iqsim/io.hpp"
#include "iqsim/recipes.hpp"
#include "iqsim/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw iqsim::IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Resolves --config / --recipe into (config text, parsed config), applying a
// --seed override on top.
struct LoadedConfig {
    std::string text;
    iqsim::config::ExperimentConfig cfg;
};

LoadedConfig load(const std::string& config_path, const std::string& recipe_name,
                  const std::uint64_t* seed_override) {
    LoadedConfig out;
    if (!config_path.empty() && !recipe_name.empty()) {
        throw iqsim::ConfigError("pass either --config or --recipe, not both");
    }
    if (!config_path.empty()) {
        out.text = read_file(config_path);
    } else if (!recipe_name.empty()) {
        out.text = iqsim::recipes::find(recipe_name).config_text;
    } else {
        throw iqsim::ConfigError("missing --config PATH (or --recipe NAME)");
    }
    out.cfg = iqsim::config::parse_config(out.text);
    if (seed_override != nullptr) out.cfg.seed = *seed_override;
    return out;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        values.push_back(std::stod(tok));
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FMCW coherent imaging simulator with a photonic IQ receiver and "
                 "row-column multiplexed sensor array"};
    app.require_subcommand(1);

    std::string config_path, recipe_name, out_dir, parameter, values_csv, trace_path;
    std::string window_name = "hann";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    int pad_factor = 2;

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", config_path, "experiment config file");
        sub->add_option("--recipe", recipe_name, "built-in experiment name");
        sub->add_option("--seed", seed, "master seed override")
            ->each([&](const std::string&) { seed_set = true; });
        auto* out = sub->add_option("--out", out_dir, "output directory");
        if (needs_out) out->required();
        sub->add_option("--threads", threads, "worker count (does not change results)")
            ->check(CLI::PositiveNumber);
    };

    auto* sim = app.add_subcommand("simulate", "run the configured experiment");
    add_common(sim, true);

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter, emit a CSV table");
    add_common(sweep, true);
    sweep->add_option("--param", parameter, "B|snr|N|leakage|linewidth")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();

    auto* analyze = app.add_subcommand("analyze", "recompute DSP from stored traces");
    analyze->add_option("--traces", trace_path, "IQTR trace file")->required();
    analyze->add_option("--out", out_dir, "output directory")->required();
    analyze->add_option("--window", window_name, "rect|hann|blackman");
    analyze->add_option("--pad", pad_factor, "zero-padding factor (power of two)");

    auto* recipes = app.add_subcommand("recipes", "list built-in experiments");
    std::string show_recipe;
    recipes->add_option("name", show_recipe, "print this recipe's config text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            const auto loaded = load(config_path, recipe_name, seed_set ? &seed : nullptr);
            iqsim::runner::run_simulate(loaded.cfg, loaded.text, out_dir, threads);
        } else if (sweep->parsed()) {
            const auto loaded = load(config_path, recipe_name, seed_set ? &seed : nullptr);
            iqsim::runner::run_sweep(loaded.cfg, loaded.text, parameter,
                                     parse_values(values_csv), out_dir, threads);
        } else if (analyze->parsed()) {
            iqsim::dsp::DspParams params;
            params.window = iqsim::dsp::window_from_name(window_name);
            params.pad_factor = pad_factor;
            iqsim::runner::run_analyze(trace_path, out_dir, params);
        } else if (recipes->parsed()) {
            if (show_recipe.empty()) {
                for (const auto& r : iqsim::recipes::all()) {
                    std::cout << r.name << "\t" << r.description << "\n";
                }
            } else {
                std::cout << iqsim::recipes::find(show_recipe).config_text;
            }
        }
    } catch (const iqsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
