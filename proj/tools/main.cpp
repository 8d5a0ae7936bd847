// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sinrtrack/config.hpp"
#include "sinrtrack/dataset_io.hpp"
#include "sinrtrack/scenario.hpp"

namespace {

// "a..b" inclusive.
bool parse_seed_range(const std::string& text, std::uint64_t& base, long& count) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        return false;
    }
    try {
        const std::uint64_t a = std::stoull(text.substr(0, dots));
        const std::uint64_t b = std::stoull(text.substr(dots + 2));
        if (b < a) {
            return false;
        }
        base = a;
        count = static_cast<long>(b - a + 1);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& seeds, int jobs) {
    sinrtrack::ExperimentConfig cfg = sinrtrack::load_experiment_config(config_path);
    if (!seeds.empty() && !parse_seed_range(seeds, cfg.seed_base, cfg.num_seeds)) {
        std::cerr << "invalid --seeds range '" << seeds << "', want a..b\n";
        return 2;
    }
    const auto violations = sinrtrack::validate_experiment_config(cfg, config_path);
    if (!violations.empty()) {
        for (const auto& v : violations) {
            std::cerr << v << '\n';
        }
        return 1;
    }
    sinrtrack::run_experiment(cfg, out_dir, jobs);
    std::cout << "wrote results under " << out_dir << '\n';
    return 0;
}

int cmd_replay(const std::string& dataset_path, const std::string& estimator_path,
               const std::string& out_path) {
    const sinrtrack::ReplayConfig cfg = sinrtrack::load_replay_config(estimator_path);
    const sinrtrack::TraceDataset dataset = sinrtrack::read_dataset_file(dataset_path);
    const sinrtrack::ReplayOutcome outcome = sinrtrack::replay_dataset(dataset, cfg);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open for writing: " << out_path << '\n';
        return 1;
    }
    sinrtrack::write_estimates_csv(out, dataset, outcome.estimates);

    if (outcome.rmse_full) {
        std::cout << "rmse_full=" << sinrtrack::format_double(*outcome.rmse_full);
        if (outcome.rmse_warm) {
            std::cout << " rmse_warm=" << sinrtrack::format_double(*outcome.rmse_warm)
                      << " (first " << cfg.warmup_slots << " slots excluded)";
        }
        std::cout << '\n';
    } else {
        std::cout << "dataset carries no ground truth; RMSE omitted\n";
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    std::vector<std::string> violations;
    if (sinrtrack::is_replay_config_file(config_path)) {
        const auto cfg = sinrtrack::load_replay_config(config_path);
        violations = sinrtrack::validate_replay_config(cfg, config_path);
    } else {
        const auto cfg = sinrtrack::load_experiment_config(config_path);
        violations = sinrtrack::validate_experiment_config(cfg, config_path);
    }
    if (violations.empty()) {
        std::cout << config_path << ": ok\n";
        return 0;
    }
    for (const auto& v : violations) {
        std::cerr << v << '\n';
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online SINR estimation from ACK/NACK and CQI feedback"};
    app.require_subcommand(1);

    std::string config_path, out_dir, seeds, dataset_path, estimator_path, out_path;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "execute a configured experiment");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seeds", seeds, "override seed range, inclusive a..b");
    run->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

    auto* replay = app.add_subcommand("replay", "replay a recorded dataset open loop");
    replay->add_option("dataset", dataset_path, "dataset CSV")->required();
    replay->add_option("--estimator", estimator_path, "estimator config (JSON)")->required();
    replay->add_option("--out", out_path, "estimates CSV to write")->required();

    auto* validate = app.add_subcommand("validate", "check a config without running");
    validate->add_option("config", config_path, "experiment config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, out_dir, seeds, jobs);
        }
        if (replay->parsed()) {
            return cmd_replay(dataset_path, estimator_path, out_path);
        }
        return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
