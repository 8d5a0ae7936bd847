// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sinrtrack {

bool TraceDataset::has_truth() const {
    if (records.empty()) {
        return false;
    }
    return std::all_of(records.begin(), records.end(),
                       [](const SlotRecord& r) { return r.true_sinr_db.has_value(); });
}

std::vector<double> TraceDataset::truth() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(r.true_sinr_db.value());
    }
    return out;
}

std::vector<double> TraceDataset::estimates() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        out.push_back(r.estimate_db.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    return out;
}

SingleExpertEstimator::SingleExpertEstimator(Method method, const EstimatorParams& params,
                                             SigmoidLinkModel model, CqiMap cqi_map,
                                             double init_db)
    : method_(method),
      state_(EstimatorState::init(params, init_db)),
      model_(std::move(model)),
      cqi_map_(std::move(cqi_map)) {}

void SingleExpertEstimator::consume(const FeedbackEvent& event) {
    switch (method_) {
        case Method::Ogd: step_ogd(state_, model_, event); break;
        case Method::Hb: step_hb(state_, model_, event); break;
        case Method::Nag: step_nag(state_, model_, event); break;
        case Method::Full: step_full(state_, model_, cqi_map_, event); break;
    }
}

FixedShareEstimator::FixedShareEstimator(ExpertEnsemble ensemble, SigmoidLinkModel model,
                                         CqiMap cqi_map, bool record_weights)
    : ensemble_(std::move(ensemble)),
      model_(std::move(model)),
      cqi_map_(std::move(cqi_map)),
      record_weights_(record_weights) {}

void FixedShareEstimator::consume(const FeedbackEvent& event) {
    ensemble_update(ensemble_, model_, cqi_map_, event);
    if (record_weights_) {
        weight_log_.push_back(ensemble_.weights());
    }
}

FtlEstimator::FtlEstimator(ExpertEnsemble ensemble, SigmoidLinkModel model, CqiMap cqi_map)
    : ensemble_(std::move(ensemble)), model_(std::move(model)), cqi_map_(std::move(cqi_map)) {}

void FtlEstimator::consume(const FeedbackEvent& event) {
    ensemble_update(ensemble_, model_, cqi_map_, event);
}

int draw_feedback(const LinkSimConfig& cfg, sinr_db true_sinr, int mcs, Rng& feedback_rng) {
    const double p = bler(cfg.true_model, true_sinr, mcs, cfg.true_cbs);
    return feedback_rng.bernoulli(p) ? 1 : 0;
}

std::optional<int> make_cqi_report(const LinkSimConfig& cfg, const CqiMap& cqi_map,
                                   sinr_db true_sinr, long slot, Rng& cqi_rng) {
    if (!cfg.cqi_enabled || cfg.cqi_period < 1 || slot % cfg.cqi_period != 0) {
        return std::nullopt;
    }
    int cqi = cqi_map.to_cqi(true_sinr);
    if (cfg.cqi_noise == CqiNoise::PlusMinusOne) {
        cqi += cqi_rng.bernoulli(0.5) ? 1 : -1;
        cqi = std::clamp(cqi, CqiMap::min_index, CqiMap::max_index);
    }
    return cqi;
}

int select_mcs_target(const SigmoidLinkModel& est_model, sinr_db gamma_est, int cbs,
                      double tau_t) {
    for (int u = est_model.num_mcs() - 1; u >= 0; --u) {
        if (bler(est_model, gamma_est, u, cbs) <= tau_t) {
            return u;
        }
    }
    return 0;
}

PolicyDecision exploration_policy_step(McsPolicy& policy, const SigmoidLinkModel& est_model,
                                       sinr_db gamma_est, int cbs, Rng& policy_rng) {
    double tau_t;
    if (policy_rng.uniform() < policy.explore_prob) {
        tau_t = policy_rng.uniform();
    } else {
        tau_t = std::clamp(policy.bler_target + policy.target_gain * policy.target_error_acc,
                           0.0, 1.0);
    }
    return {select_mcs_target(est_model, gamma_est, cbs, tau_t), tau_t};
}

void policy_observe(McsPolicy& policy, int y) {
    policy.target_error_acc += policy.bler_target - static_cast<double>(y);
}

TraceDataset run_closed_loop(const LinkSimConfig& cfg, const std::vector<sinr_db>& trace,
                             SinrEstimator& estimator, McsPolicy& policy) {
    const long horizon = static_cast<long>(trace.size());
    const long fb_delay = cfg.feedback_delay;
    const long cqi_delay = cfg.effective_cqi_delay();
    if (fb_delay < 0 || cqi_delay < 0) {
        throw std::invalid_argument("feedback delay must be nonnegative");
    }

    Rng feedback_rng = Rng(cfg.seed).substream(rng_role::feedback);
    Rng cqi_rng = Rng(cfg.seed).substream(rng_role::cqi_noise);
    Rng policy_rng = Rng(cfg.seed).substream(rng_role::policy);

    TraceDataset dataset;
    dataset.records.resize(static_cast<std::size_t>(horizon));

    for (long t = 0; t < horizon; ++t) {
        const double truth = trace[static_cast<std::size_t>(t)];
        const double estimate = estimator.predict();
        const double selection_sinr = policy.driver == PolicyDriver::Truth ? truth : estimate;
        const PolicyDecision decision =
            exploration_policy_step(policy, cfg.est_model, selection_sinr, cfg.est_cbs,
                                    policy_rng);
        const int y = draw_feedback(cfg, truth, decision.mcs, feedback_rng);
        const std::optional<int> cqi = make_cqi_report(cfg, cfg.cqi_map, truth, t, cqi_rng);

        auto& rec = dataset.records[static_cast<std::size_t>(t)];
        rec.slot = t;
        rec.true_sinr_db = truth;
        rec.mcs = decision.mcs;
        rec.cbs = cfg.true_cbs;
        rec.y = y;
        rec.cqi = cqi;
        rec.estimate_db = estimate;

        // Deliver the feedback that matured this slot. The event is tagged
        // with the originating slot's MCS and the estimator-side CBS.
        if (t >= fb_delay) {
            const auto& src = dataset.records[static_cast<std::size_t>(t - fb_delay)];
            FeedbackEvent event;
            event.mcs = src.mcs;
            event.cbs = cfg.est_cbs;
            event.y = src.y;
            if (t >= cqi_delay) {
                event.cqi = dataset.records[static_cast<std::size_t>(t - cqi_delay)].cqi;
            }
            estimator.consume(event);
            policy_observe(policy, event.y);
        }
    }
    return dataset;
}

std::vector<double> run_open_loop(const TraceDataset& dataset, const LinkSimConfig& cfg,
                                  SinrEstimator& estimator) {
    const long horizon = static_cast<long>(dataset.records.size());
    const long fb_delay = cfg.feedback_delay;
    const long cqi_delay = cfg.effective_cqi_delay();

    std::vector<double> estimates;
    estimates.reserve(dataset.records.size());
    for (long t = 0; t < horizon; ++t) {
        estimates.push_back(estimator.predict());
        if (t >= fb_delay) {
            const auto& src = dataset.records[static_cast<std::size_t>(t - fb_delay)];
            FeedbackEvent event;
            event.mcs = src.mcs;
            event.cbs = cfg.est_cbs;
            event.y = src.y;
            if (t >= cqi_delay) {
                event.cqi = dataset.records[static_cast<std::size_t>(t - cqi_delay)].cqi;
            }
            estimator.consume(event);
        }
    }
    return estimates;
}

}  // namespace sinrtrack
