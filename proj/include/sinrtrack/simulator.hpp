// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sinrtrack/baselines.hpp"
#include "sinrtrack/ensemble.hpp"
#include "sinrtrack/estimator.hpp"
#include "sinrtrack/link_model.hpp"
#include "sinrtrack/rng.hpp"

namespace sinrtrack {

enum class CqiNoise { None, PlusMinusOne };

// One closed-loop run's wiring. The feedback draw only ever reads the true
// model and true CBS; the policy and every estimator only ever read the
// estimator-side model and CBS, which is how model mismatch is injected.
struct LinkSimConfig {
    SigmoidLinkModel true_model;
    SigmoidLinkModel est_model;
    CqiMap cqi_map;
    int true_cbs = 1000;
    int est_cbs = 1000;
    long feedback_delay = 5;                // slots
    std::optional<long> cqi_delay;          // defaults to feedback_delay
    long cqi_period = 10;                   // slots between reports
    CqiNoise cqi_noise = CqiNoise::None;
    bool cqi_enabled = true;
    std::uint64_t seed = 0;

    long effective_cqi_delay() const { return cqi_delay.value_or(feedback_delay); }
};

// One dataset row. true_sinr/estimate may be absent in imported logs; the
// simulator always fills them. cbs is the transmitted block size.
struct SlotRecord {
    long slot = 0;
    std::optional<double> true_sinr_db;
    int mcs = 0;
    int cbs = 1000;
    int y = 0;
    std::optional<int> cqi;
    std::optional<double> estimate_db;
};

struct TraceDataset {
    std::vector<SlotRecord> records;

    bool has_truth() const;
    std::vector<double> truth() const;      // requires has_truth()
    std::vector<double> estimates() const;  // recorded estimates, NaN when absent
};

// Uniform online-estimator surface the harness drives: predict the current
// slot, then consume whatever feedback matured.
class SinrEstimator {
  public:
    virtual ~SinrEstimator() = default;
    virtual double predict() const = 0;
    virtual void consume(const FeedbackEvent& event) = 0;
    // Per-slot expert weights for diagnostics; null for single estimators.
    virtual const std::vector<std::vector<double>>* weight_log() const { return nullptr; }
};

class SingleExpertEstimator final : public SinrEstimator {
  public:
    enum class Method { Ogd, Hb, Nag, Full };

    SingleExpertEstimator(Method method, const EstimatorParams& params, SigmoidLinkModel model,
                          CqiMap cqi_map, double init_db);

    double predict() const override { return state_.gamma_prev; }
    void consume(const FeedbackEvent& event) override;
    const EstimatorState& state() const { return state_; }

  private:
    Method method_;
    EstimatorState state_;
    SigmoidLinkModel model_;
    CqiMap cqi_map_;
};

class FixedShareEstimator final : public SinrEstimator {
  public:
    FixedShareEstimator(ExpertEnsemble ensemble, SigmoidLinkModel model, CqiMap cqi_map,
                        bool record_weights = false);

    double predict() const override { return ensemble_predict(ensemble_); }
    void consume(const FeedbackEvent& event) override;
    const std::vector<std::vector<double>>* weight_log() const override {
        return record_weights_ ? &weight_log_ : nullptr;
    }
    const ExpertEnsemble& ensemble() const { return ensemble_; }

  private:
    ExpertEnsemble ensemble_;
    SigmoidLinkModel model_;
    CqiMap cqi_map_;
    bool record_weights_;
    std::vector<std::vector<double>> weight_log_;
};

// Same pool, but the prediction follows the lowest cumulative loss.
class FtlEstimator final : public SinrEstimator {
  public:
    FtlEstimator(ExpertEnsemble ensemble, SigmoidLinkModel model, CqiMap cqi_map);

    double predict() const override { return ftl_predict(ensemble_); }
    void consume(const FeedbackEvent& event) override;

  private:
    ExpertEnsemble ensemble_;
    SigmoidLinkModel model_;
    CqiMap cqi_map_;
};

class OllaEstimator final : public SinrEstimator {
  public:
    explicit OllaEstimator(OllaState state) : state_(state) {}

    double predict() const override { return state_.estimate_db; }
    void consume(const FeedbackEvent& event) override { olla_step(state_, event.y); }

  private:
    OllaState state_;
};

class LtsEstimator final : public SinrEstimator {
  public:
    LtsEstimator(LtsState state, SigmoidLinkModel model)
        : state_(std::move(state)), model_(std::move(model)) {}

    double predict() const override { return state_.estimate(); }
    void consume(const FeedbackEvent& event) override { lts_step(state_, model_, event); }

  private:
    LtsState state_;
    SigmoidLinkModel model_;
};

// ACK/NACK draw from the true link behavior.
int draw_feedback(const LinkSimConfig& cfg, sinr_db true_sinr, int mcs, Rng& feedback_rng);

// CQI report on the reporting grid, quantized from the true SINR, optionally
// index-noised by +-1, saturating at the table ends.
std::optional<int> make_cqi_report(const LinkSimConfig& cfg, const CqiMap& cqi_map,
                                   sinr_db true_sinr, long slot, Rng& cqi_rng);

// Highest MCS whose estimated BLER stays within the instantaneous target;
// falls back to the most robust index when none qualifies.
int select_mcs_target(const SigmoidLinkModel& est_model, sinr_db gamma_est, int cbs, double tau_t);

// What the data-generating MCS selection follows: the driving estimator's
// estimate (standard closed loop) or the true SINR (a scheduler with perfect
// channel knowledge, for open-loop evaluation datasets).
enum class PolicyDriver { Estimate, Truth };

// Long-run BLER steering with optional uniform exploration of the target.
struct McsPolicy {
    double bler_target = 0.1;
    double explore_prob = 0.0;
    double target_gain = 0.02;      // accumulator gain
    double target_error_acc = 0.0;  // running sum of (target - y_i)
    PolicyDriver driver = PolicyDriver::Estimate;
};

struct PolicyDecision {
    int mcs = 0;
    double tau_t = 0.0;
};

PolicyDecision exploration_policy_step(McsPolicy& policy, const SigmoidLinkModel& est_model,
                                       sinr_db gamma_est, int cbs, Rng& policy_rng);

// Fold one matured ACK/NACK into the policy accumulator.
void policy_observe(McsPolicy& policy, int y);

// Slot-synchronous closed loop: predict, pick the MCS, transmit against the
// true link, queue the feedback, consume what matured. Feedback events carry
// the MCS of the slot they refer to and the estimator-side CBS.
TraceDataset run_closed_loop(const LinkSimConfig& cfg, const std::vector<sinr_db>& trace,
                             SinrEstimator& estimator, McsPolicy& policy);

// Replay a recorded dataset through an estimator without influencing it,
// using the same delay pipeline as the closed loop. Returns the per-slot
// estimates aligned with the dataset slots.
std::vector<double> run_open_loop(const TraceDataset& dataset, const LinkSimConfig& cfg,
                                  SinrEstimator& estimator);

}  // namespace sinrtrack
