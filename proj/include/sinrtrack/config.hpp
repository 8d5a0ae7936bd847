// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sinrtrack/baselines.hpp"
#include "sinrtrack/ensemble.hpp"
#include "sinrtrack/simulator.hpp"
#include "sinrtrack/trace.hpp"

namespace sinrtrack {

struct LinkModelConfig {
    int num_mcs = 28;
    double center0_db = -6.0;
    double center_step_db = 0.9;
    double scale_db = 1.0;
    std::optional<std::vector<McsCurve>> curves;  // overrides the linear law
    double ref_cbs = 1000.0;
    double cbs_center_shift_db_per_decade = 0.5;
    double cbs_scale_exponent = 0.1;
    Interval scale_clip{0.5, 2.0};
    Interval bler_clip{0.01, 0.99};

    SigmoidLinkModel build() const;
};

struct CqiMapConfig {
    double base_db = -8.0;
    double step_db = 1.8;
    std::optional<std::vector<double>> table_db;  // overrides the affine law

    CqiMap build() const;
};

struct SimSectionConfig {
    int true_cbs = 1000;
    int est_cbs = 1000;
    long feedback_delay = 5;
    std::optional<long> cqi_delay;
    long cqi_period = 10;
    CqiNoise cqi_noise = CqiNoise::None;
    bool cqi_enabled = true;
};

struct EstimatorConfig {
    enum class Kind { Single, Ogd, Hb, Nag, Salad, FixedShare, Ftl, Olla, Nolla, Lts };

    Kind kind = Kind::Salad;
    // single / ogd / hb / nag
    double cqi_weight = 0.0;
    double momentum = 0.0;
    double stepsize = 1.0;
    MomentumGate gate = MomentumGate::WhenCqiAbsent;
    // fixed_share / ftl
    std::vector<double> cqi_weight_grid;
    std::vector<double> momentum_grid;
    std::vector<double> stepsize_grid;
    double learning_rate = 1.0;
    double share_rate = 1e-3;
    ExpertLossKind loss_kind = ExpertLossKind::Threshold;
    // olla / nolla
    double olla_step_db = 1.0;
    double olla_bler_target = 0.1;
    double nolla_step_floor_db = 0.1;
    double nolla_decay_rate = 0.002;
    // lts
    double lts_grid_lo_db = -20.0;
    double lts_grid_hi_db = 40.0;
    double lts_grid_step_db = 0.25;
};

struct PolicyConfig {
    double bler_target = 0.1;
    double explore_prob = 0.0;
    double target_gain = 0.02;
    PolicyDriver driver = PolicyDriver::Estimate;
};

struct GeneratorConfig {
    std::string name;
    EstimatorConfig estimator;
    PolicyConfig policy;
};

enum class EvaluatorRole { Expert, Meta };

struct EvaluatorConfig {
    std::string name;
    EvaluatorRole role = EvaluatorRole::Expert;
    EstimatorConfig estimator;
};

struct StepResponseConfig {
    long step_slot = 1000;
    double band_db = 1.0;
    long hold_slots = 50;
    long overshoot_window = std::numeric_limits<long>::max();
};

struct OutputsConfig {
    bool datasets = false;
    bool weights = false;
    long warmup_slots = 100;
    std::vector<double> percentile_ps{20.0, 50.0, 80.0};
    double rate_per_mcs_step = 0.2;
    std::optional<StepResponseConfig> step_response;
};

struct ExperimentConfig {
    std::string name;
    LinkModelConfig link;
    std::optional<LinkModelConfig> est_link;  // defaults to link
    CqiMapConfig cqi_map;
    SimSectionConfig sim;
    std::vector<SinrTraceSpec> traces;  // seed field ignored; seeds assigned per UE
    std::uint64_t seed_base = 1;
    long num_seeds = 1;
    double init_db = 0.0;
    std::vector<GeneratorConfig> generators;
    std::vector<EvaluatorConfig> evaluators;
    OutputsConfig outputs;

    const LinkModelConfig& est_link_or_default() const { return est_link ? *est_link : link; }
};

// Estimator-side settings for open-loop replay of a recorded dataset.
struct ReplayConfig {
    LinkModelConfig link;
    CqiMapConfig cqi_map;
    int est_cbs = 1000;
    long feedback_delay = 5;
    std::optional<long> cqi_delay;
    EstimatorConfig estimator;
    double init_db = 0.0;
    long warmup_slots = 100;
};

// Parse or semantic failure; message lists every violation as
// `<path>: <key>: <problem>`, parse errors carry the line.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

ExperimentConfig load_experiment_config(const std::string& path);
ReplayConfig load_replay_config(const std::string& path);

// Semantic checks only; returns one message per violation (empty = valid).
std::vector<std::string> validate_experiment_config(const ExperimentConfig& cfg,
                                                    const std::string& path);
std::vector<std::string> validate_replay_config(const ReplayConfig& cfg,
                                                const std::string& path);

// True when the file carries a top-level "estimator" key, i.e. a replay
// config rather than an experiment.
bool is_replay_config_file(const std::string& path);

std::unique_ptr<SinrEstimator> make_estimator(const EstimatorConfig& cfg,
                                              const SigmoidLinkModel& est_model,
                                              const CqiMap& cqi_map, double init_db,
                                              bool record_weights = false);

}  // namespace sinrtrack
