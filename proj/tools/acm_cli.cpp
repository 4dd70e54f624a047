// Command-line front end: `run` executes a Monte Carlo study, `replay`
// renders one recorded trial.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "acm/report.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUnknownCase = 2,
    kUnwritableOutput = 3,
    kBadConfig = 4,
    kBadTrajectory = 5,
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct RunOptions {
    std::optional<std::string> case_id;
    std::optional<std::string> config_path;
    std::optional<std::string> seed;
    std::optional<int> trials;
    std::optional<std::string> out;
    std::optional<int> parallel;
    std::optional<bool> plot;
    std::optional<int> extra_iterations;
};

// The case comes first because it resets everything else to its preset.
// Command-line flags override the file.
KeyValues collect_settings(const RunOptions& o) {
    KeyValues file;
    if (o.config_path) {
        std::ifstream in(*o.config_path);
        if (!in) throw acm::ConfigError("cannot read config file '" + *o.config_path + "'");
        file = acm::parse_key_values(in);
    }
    KeyValues kv;
    if (o.case_id) {
        if (!acm::is_preset_case(*o.case_id)) throw acm::UnknownCaseError(*o.case_id);
        kv.emplace_back("case", *o.case_id);
    }
    for (auto& [k, v] : file) {
        if (k != "case") continue;
        if (!o.case_id) kv.emplace_back(k, v);
    }
    if (kv.empty()) kv.emplace_back("case", "I");
    for (auto& [k, v] : file)
        if (k != "case") kv.emplace_back(k, v);
    if (o.seed) kv.emplace_back("seed", *o.seed);
    if (o.trials) kv.emplace_back("trials", std::to_string(*o.trials));
    if (o.out) kv.emplace_back("out", *o.out);
    if (o.parallel) kv.emplace_back("parallel", std::to_string(*o.parallel));
    if (o.plot) kv.emplace_back("plot", *o.plot ? "true" : "false");
    if (o.extra_iterations)
        kv.emplace_back("search.extra_iterations", std::to_string(*o.extra_iterations));
    return kv;
}

int run_command(const RunOptions& o) {
    try {
        const acm::RunConfig rc = acm::resolve_config(collect_settings(o));
        const acm::MCStudy study = acm::run_case(rc);
        acm::print_summary_table(std::cout, rc, study.summary);
        std::cout << "artifacts written to " << rc.out_dir << "\n";
        return kOk;
    } catch (const acm::UnknownCaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnknownCase;
    } catch (const acm::OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnwritableOutput;
    } catch (const acm::ConfigError& e) {
        std::cerr << "error: malformed config: " << e.what() << "\n";
        return kBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: malformed config: " << e.what() << "\n";
        return kBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}

struct ReplayOptions {
    std::string csv_path;
    std::optional<std::string> out;
    std::optional<int> trial;
    std::optional<std::string> config_path;
};

int replay_command(const ReplayOptions& o) {
    try {
        acm::RunConfig rc = acm::preset_run_config("I");
        if (o.config_path) rc = acm::load_config_file(*o.config_path);
        std::ifstream in(o.csv_path);
        if (!in) {
            std::cerr << "error: cannot read '" << o.csv_path << "'\n";
            return kFailure;
        }
        const auto trials = acm::read_trajectory_csv(in, rc.ctx.p1.v(), rc.ctx.p2.v(),
                                                     rc.ctx.p1.maneuver_duration());
        const acm::TrialRecord* chosen = &trials.front();
        if (o.trial) {
            chosen = nullptr;
            for (const auto& t : trials)
                if (t.trial == *o.trial) chosen = &t;
            if (!chosen) {
                std::cerr << "error: trial " << *o.trial << " not in '" << o.csv_path << "'\n";
                return kFailure;
            }
        }
        const std::string svg = acm::render_track_svg(*chosen, rc.ctx.eng, rc.ctx);
        if (!o.out) {
            std::cout << svg;
            return kOk;
        }
        std::ofstream out(*o.out, std::ios::binary | std::ios::trunc);
        if (!out || !(out << svg).flush()) {
            std::cerr << "error: cannot write '" << *o.out << "'\n";
            return kUnwritableOutput;
        }
        return kOk;
    } catch (const acm::TrajectorySchemaError& e) {
        std::cerr << "error: " << o.csv_path << ": " << e.what() << "\n";
        return kBadTrajectory;
    } catch (const acm::UnknownCaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnknownCase;
    } catch (const acm::ConfigError& e) {
        std::cerr << "error: malformed config: " << e.what() << "\n";
        return kBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Air combat maneuvering self-play simulator"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo study and write its artifacts");
    run_cmd->add_option("--case", run.case_id, "Case preset: I, II, III or IV");
    run_cmd->add_option("--config", run.config_path, "Key-value config file");
    run_cmd->add_option("--seed", run.seed, "Master seed (unsigned 64-bit)");
    run_cmd->add_option("--trials", run.trials, "Number of trials (even)");
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("--parallel", run.parallel, "Worker threads");
    run_cmd->add_flag("--plot,!--no-plot", run.plot, "Write SVG plots");
    run_cmd->add_option("--extra-iterations", run.extra_iterations,
                        "Search passes after the tree reaches m_tree nodes");

    ReplayOptions replay;
    auto* replay_cmd = app.add_subcommand("replay", "Render a recorded trial as an SVG track plot");
    replay_cmd->add_option("csv", replay.csv_path, "Trajectory CSV")->required();
    replay_cmd->add_option("--out", replay.out, "SVG path (default: standard output)");
    replay_cmd->add_option("--trial", replay.trial, "Trial to render (default: first)");
    replay_cmd->add_option("--config", replay.config_path,
                           "Config giving airframe and cone parameters (default: case I)");

    CLI11_PARSE(app, argc, argv);
    if (run_cmd->parsed()) return run_command(run);
    return replay_command(replay);
}
