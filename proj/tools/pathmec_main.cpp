// Batch CLI around the path-following simulation library.
//
// Subcommands:
//   run    one scenario -> timeseries.csv + summary.json (+ SVG plots)
//   sweep  robustness table over steering-resistance values -> sweep.csv/.md
//   path   reconstruct a target path -> path.csv (+ SVG)
//
// Exit codes: 0 Completed, 2 Diverged, 3 Singular, 4 TimedOut,
// 64 config error, 74 I/O error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathmec/errors.hpp"
#include "pathmec/report.hpp"
#include "pathmec/scenario.hpp"
#include "pathmec/simulation.hpp"

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitIo = 74;

namespace fs = std::filesystem;
using namespace pathmec;

int status_exit_code(RunStatus status) {
    switch (status) {
        case RunStatus::Completed: return 0;
        case RunStatus::Diverged: return 2;
        case RunStatus::Singular: return 3;
        case RunStatus::TimedOut: return 4;
    }
    return 1;
}

struct CommonFlags {
    std::string scenario_file;
    std::string out_dir = "out";
    std::string path_spec;
    std::string mode;
    double dt = 0.0;
    double skip = -1.0;
    bool svg = false;
};

void add_common_options(CLI::App* cmd, CommonFlags& flags, bool with_mode) {
    cmd->add_option("scenario", flags.scenario_file,
                    "Scenario file (JSON); omitted fields take the benchmark defaults");
    cmd->add_option("--out", flags.out_dir, "Output directory (created if missing)");
    cmd->add_option("--path", flags.path_spec,
                    "Target path: 1, 2, or a JSON file with a path object");
    cmd->add_option("--dt", flags.dt, "Integration step [s]");
    cmd->add_option("--skip", flags.skip, "Error-metric onset arc length s* [m]");
    cmd->add_flag("--svg", flags.svg, "Also write SVG plots");
    if (with_mode)
        cmd->add_option("--mode", flags.mode, "Controller mode")
            ->check(CLI::IsMember({"feedforward", "mec", "direct"}));
}

ControlMode mode_from_string(const std::string& text) {
    if (text == "feedforward") return ControlMode::Feedforward;
    if (text == "direct") return ControlMode::DirectFeedback;
    return ControlMode::Mec;
}

LoadedScenario assemble_scenario(const CommonFlags& flags) {
    LoadedScenario sc = flags.scenario_file.empty() ? default_scenario()
                                                    : load_scenario_file(flags.scenario_file);
    if (!flags.path_spec.empty()) {
        const bool numeric = flags.path_spec.find_first_not_of("0123456789") == std::string::npos;
        if (flags.path_spec == "1" || flags.path_spec == "2") {
            const auto id = flags.path_spec == "1" ? BuiltinPath::Path1 : BuiltinPath::Path2;
            sc.config.path = builtin_path(id);
            sc.config.builtin_path_id = static_cast<int>(id);
        } else if (numeric) {
            throw ConfigError("path", "builtin path id must be 1 or 2 (got " + flags.path_spec +
                                          ")");
        } else {
            std::ifstream in(flags.path_spec);
            if (!in) throw std::ios_base::failure("cannot read path file: " + flags.path_spec);
            std::ostringstream buf;
            buf << in.rdbuf();
            sc.config.path = parse_path_json(buf.str(), &sc.config.builtin_path_id);
        }
        if (!sc.t_max_explicit) sc.config.t_max = 0.0; // re-resolve from the new path
    }
    if (!flags.mode.empty()) sc.config.controller.mode = mode_from_string(flags.mode);
    if (flags.dt > 0.0) sc.config.dt = flags.dt;
    if (flags.skip >= 0.0) sc.config.skip_arclength = flags.skip;
    if (flags.svg) sc.output.svg = true;
    sc.config.validate_and_resolve();
    return sc;
}

std::ofstream open_output(const fs::path& file) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + file.string());
    return os;
}

int cmd_run(const CommonFlags& flags) {
    LoadedScenario sc = assemble_scenario(flags);

    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(sc.config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    fs::create_directories(flags.out_dir);
    {
        auto os = open_output(fs::path(flags.out_dir) / "timeseries.csv");
        write_timeseries_csv(os, result);
    }
    {
        auto os = open_output(fs::path(flags.out_dir) / "summary.json");
        write_summary_json(os, result, scenario_echo_json(sc.config, sc.output), wall);
    }
    if (sc.output.svg) {
        const auto polyline = sc.config.path.reconstruct(0.01);
        {
            auto os = open_output(fs::path(flags.out_dir) / "trajectory.svg");
            write_trajectory_svg(os, polyline, result, sc.config.controller.mode);
        }
        {
            auto os = open_output(fs::path(flags.out_dir) / "error.svg");
            write_error_svg(os, result, sc.config.controller.mode);
        }
    }

    std::cout << "status=" << to_string(result.status);
    if (result.max_error) std::cout << " max_error=" << *result.max_error;
    std::cout << " max_error_raw=" << result.max_error_raw << " wall_s=" << wall << "\n";
    if (!result.termination_reason.empty())
        std::cout << "terminated: " << result.termination_reason << "\n";
    return status_exit_code(result.status);
}

int cmd_sweep(const CommonFlags& flags, const std::vector<double>& c_values) {
    LoadedScenario sc = assemble_scenario(flags);
    const SweepResult result = sweep(sc.config, c_values);

    fs::create_directories(flags.out_dir);
    {
        auto os = open_output(fs::path(flags.out_dir) / "sweep.csv");
        write_sweep_csv(os, result);
    }
    {
        auto os = open_output(fs::path(flags.out_dir) / "sweep.md");
        write_sweep_markdown(os, result);
    }
    write_sweep_markdown(std::cout, result);
    return 0;
}

int cmd_path(const CommonFlags& flags, double ds) {
    if (flags.path_spec.empty())
        throw ConfigError("path", "the path subcommand requires --path <1|2|file>");
    LoadedScenario sc = assemble_scenario(flags);
    const auto points = sc.config.path.reconstruct(ds);

    fs::create_directories(flags.out_dir);
    {
        auto os = open_output(fs::path(flags.out_dir) / "path.csv");
        write_path_csv(os, points, sc.config.path);
    }
    if (sc.output.svg) {
        auto os = open_output(fs::path(flags.out_dir) / "path.svg");
        write_path_svg(os, points);
    }
    std::cout << "rows=" << points.size() << " length=" << sc.config.path.length() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust path-following simulation (feedback linearization + "
                 "model error compensation)"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "Simulate one scenario");
    add_common_options(run_cmd, run_flags, true);

    CommonFlags sweep_flags;
    std::vector<double> c_values = {100.0, 150.0, 200.0, 250.0, 300.0, 400.0};
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Robustness table over steering-resistance values");
    add_common_options(sweep_cmd, sweep_flags, false);
    sweep_cmd->add_option("--c-values", c_values, "Comma-separated list of true C values")
        ->delimiter(',');

    CommonFlags path_flags;
    double ds = 0.01;
    auto* path_cmd = app.add_subcommand("path", "Reconstruct a target path polyline");
    add_common_options(path_cmd, path_flags, false);
    path_cmd->add_option("--ds", ds, "Sample spacing [m]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_flags);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags, c_values);
        if (path_cmd->parsed()) return cmd_path(path_flags, ds);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
