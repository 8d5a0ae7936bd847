// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sinrtrack/config.hpp"
#include "sinrtrack/metrics.hpp"

namespace sinrtrack {

struct CellMetrics {
    double rmse_warm = 0.0;  // first warmup_slots excluded
    double rmse_full = 0.0;
    std::optional<StepResponse> step;
};

struct UeMetrics {
    std::uint64_t seed = 0;
    CellMetrics self;  // the generator's own recorded estimates
    double se = 0.0;
    std::vector<CellMetrics> evaluators;  // aligned with cfg.evaluators
};

struct ExperimentResult {
    // Indexed [generator][ue].
    std::vector<std::vector<UeMetrics>> metrics;
};

// Execute the configured experiment: every generator runs closed loop on
// every UE trace, every evaluator replays each dataset open loop, and the
// metric tables land under out_dir. Deterministic byte-for-byte for a fixed
// config regardless of the job count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                int jobs = 1);

struct ReplayOutcome {
    std::vector<double> estimates;
    std::optional<double> rmse_warm;  // absent without ground truth
    std::optional<double> rmse_full;
};

// Open-loop replay of a recorded dataset under estimator-side settings.
ReplayOutcome replay_dataset(const TraceDataset& dataset, const ReplayConfig& cfg);

// LinkSimConfig for the estimator side of a replay (true side unused).
LinkSimConfig replay_sim_config(const ReplayConfig& cfg);

}  // namespace sinrtrack
