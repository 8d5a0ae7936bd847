// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sinrtrack {

namespace {

double log_sum_exp(const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) {
        return m;
    }
    double acc = 0.0;
    for (double x : v) {
        acc += std::exp(x - m);
    }
    return m + std::log(acc);
}

}  // namespace

std::vector<double> ExpertEnsemble::weights() const {
    std::vector<double> w(log_weights.size());
    for (std::size_t n = 0; n < w.size(); ++n) {
        w[n] = std::exp(log_weights[n]);
    }
    return w;
}

double expert_loss(ExpertLossKind kind, const SigmoidLinkModel& model, double gamma_est,
                   const FeedbackEvent& event) {
    if (kind == ExpertLossKind::Bce) {
        return bce_loss(model, gamma_est, event.mcs, event.cbs, event.y);
    }
    const double p = bler(model, gamma_est, event.mcs, event.cbs);
    return std::abs(static_cast<double>(event.y) - p) > 0.5 ? 1.0 : 0.0;
}

double ensemble_predict(const ExpertEnsemble& ensemble) {
    double acc = 0.0;
    for (std::size_t n = 0; n < ensemble.size(); ++n) {
        acc += std::exp(ensemble.log_weights[n]) * ensemble.experts[n].gamma_prev;
    }
    return acc;
}

void ensemble_update(ExpertEnsemble& ensemble, const SigmoidLinkModel& model,
                     const CqiMap& cqi_map, const FeedbackEvent& event) {
    const std::size_t n_experts = ensemble.size();

    for (std::size_t n = 0; n < n_experts; ++n) {
        // Each expert is charged on its own prediction, not the mixture's.
        const double loss =
            expert_loss(ensemble.loss_kind, model, ensemble.experts[n].gamma_prev, event);
        ensemble.cumulative_loss[n] += loss;
        ensemble.log_weights[n] -= ensemble.learning_rate * loss;
    }

    const double lse = log_sum_exp(ensemble.log_weights);
    if (!std::isfinite(lse)) {
        // Every weight underflowed; fall back to uniform and record it.
        const double u = -std::log(static_cast<double>(n_experts));
        std::fill(ensemble.log_weights.begin(), ensemble.log_weights.end(), u);
        ++ensemble.uniform_resets;
    } else {
        for (double& lw : ensemble.log_weights) {
            lw -= lse;
        }
    }

    if (ensemble.share_rate > 0.0) {
        const double floor = ensemble.share_rate / static_cast<double>(n_experts);
        for (double& lw : ensemble.log_weights) {
            lw = std::log((1.0 - ensemble.share_rate) * std::exp(lw) + floor);
        }
    }

    for (auto& expert : ensemble.experts) {
        step_full(expert, model, cqi_map, event);
    }
}

ExpertEnsemble make_grid_ensemble(std::span<const double> cqi_weights,
                                  std::span<const double> momentums,
                                  std::span<const double> stepsizes, MomentumGate gate,
                                  double learning_rate, double share_rate,
                                  ExpertLossKind loss_kind, double init_db) {
    if (cqi_weights.empty() || momentums.empty() || stepsizes.empty()) {
        throw std::invalid_argument("parameter grids must be non-empty");
    }
    ExpertEnsemble ensemble;
    ensemble.learning_rate = learning_rate;
    ensemble.share_rate = share_rate;
    ensemble.loss_kind = loss_kind;
    for (double a : cqi_weights) {
        for (double b : momentums) {
            for (double e : stepsizes) {
                EstimatorParams params;
                params.cqi_weight = a;
                params.momentum = b;
                params.stepsize = e;
                params.gate = gate;
                ensemble.experts.push_back(EstimatorState::init(params, init_db));
            }
        }
    }
    const double u = -std::log(static_cast<double>(ensemble.experts.size()));
    ensemble.log_weights.assign(ensemble.experts.size(), u);
    ensemble.cumulative_loss.assign(ensemble.experts.size(), 0.0);
    return ensemble;
}

double ftl_predict(const ExpertEnsemble& ensemble) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < ensemble.size(); ++n) {
        if (ensemble.cumulative_loss[n] < ensemble.cumulative_loss[best]) {
            best = n;
        }
    }
    return ensemble.experts[best].gamma_prev;
}

}  // namespace sinrtrack
