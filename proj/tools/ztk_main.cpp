#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ztk/harness/presets.hpp"
#include "ztk/harness/scenario.hpp"
#include "ztk/harness/sweep.hpp"

namespace {

void apply_overrides(ztk::ScenarioConfig& cfg, const std::optional<uint64_t>& seed,
                     const std::optional<double>& dt) {
    if (seed) {
        cfg.noise.seed = *seed;
        cfg.attack.direction_seed = *seed;
    }
    if (dt) cfg.grid.dt = *dt;
    cfg.validate();
}

void print_summary(const ztk::ScenarioResult& res, const std::string& out_dir) {
    const auto& m = res.metrics;
    auto num = [](const std::optional<double>& v) {
        return v ? ztk::format_g9(*v) : std::string("none");
    };
    std::cout << "detection_time: " << num(m.detection_time) << "\n"
              << "gamma: " << num(m.gamma) << "\n"
              << "max_output_deviation: " << ztk::format_g9(m.max_output_deviation) << "\n"
              << "residual_steady_norm: " << ztk::format_g9(m.residual_steady_norm) << "\n"
              << "outputs: " << out_dir << "\n";
}

int run_config(ztk::ScenarioConfig cfg, const std::optional<uint64_t>& seed,
               const std::optional<double>& dt, const std::string& out_dir) {
    apply_overrides(cfg, seed, dt);
    const ztk::ScenarioResult res = ztk::run_scenario(cfg);
    ztk::emit_outputs(res, out_dir);
    print_summary(res, out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-dynamics attack detection and recovery testbed"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::optional<uint64_t> seed;
    std::optional<double> dt;
    std::string presets_dir;

    auto add_common = [&](CLI::App* sub, bool with_out = true) {
        if (with_out) sub->add_option("--out", out_dir, "output directory (default: out)");
        sub->add_option("--seed", seed, "override the noise/direction seed");
        sub->add_option("--dt", dt, "override the integration step, seconds");
    };

    // run
    std::string config_path;
    CLI::App* cmd_run = app.add_subcommand("run", "simulate a scenario config file");
    cmd_run->add_option("config", config_path, "path to a scenario JSON file")->required();
    add_common(cmd_run);

    // preset
    std::string preset_name;
    CLI::App* cmd_preset = app.add_subcommand("preset", "simulate a shipped scenario");
    cmd_preset->add_option("name", preset_name, "preset name (see list-presets)")->required();
    cmd_preset->add_option("--presets-dir", presets_dir, "directory with preset files");
    add_common(cmd_preset);

    // sweep
    std::string sweep_config, sweep_param;
    std::vector<std::string> sweep_values;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "rerun a config with one field swept over values");
    cmd_sweep->add_option("config", sweep_config, "path to a scenario JSON file")->required();
    cmd_sweep->add_option("--param", sweep_param, "dotted config path, e.g. recovery.lambda")
        ->required();
    cmd_sweep
        ->add_option("--values", sweep_values, "values to sweep (JSON scalars)")
        ->required()
        ->delimiter(',');
    cmd_sweep->add_option("--out", out_dir, "output directory (default: out)");

    // list-presets
    CLI::App* cmd_list = app.add_subcommand("list-presets", "show shipped scenario names");
    cmd_list->add_option("--presets-dir", presets_dir, "directory with preset files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // command-line misuse is a configuration error
    }

    try {
        if (*cmd_run) {
            return run_config(ztk::ScenarioConfig::from_file(config_path), seed, dt, out_dir);
        }
        if (*cmd_preset) {
            const std::string dir = ztk::find_presets_dir(presets_dir);
            return run_config(ztk::load_preset(preset_name, dir), seed, dt, out_dir);
        }
        if (*cmd_sweep) {
            std::ifstream in(sweep_config);
            if (!in) throw ztk::ConfigError("cannot open config file: " + sweep_config);
            ztk::Json base;
            try {
                base = ztk::Json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw ztk::ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            const ztk::SweepResult res = ztk::run_sweep(base, sweep_param, sweep_values);
            std::filesystem::create_directories(out_dir);
            const std::string p = out_dir + "/sweep.csv";
            std::ofstream f(p);
            if (!f) throw ztk::IoError("cannot write " + p);
            ztk::write_sweep_csv(res, f);
            std::cout << "sweep table: " << p << "\n";
            return 0;
        }
        if (*cmd_list) {
            const std::string dir = ztk::find_presets_dir(presets_dir);
            for (const auto& n : ztk::list_presets(dir)) std::cout << n << "\n";
            return 0;
        }
    } catch (const ztk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ztk::SimError& e) {
        std::cerr << "simulation fault: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
