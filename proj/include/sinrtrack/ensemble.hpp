// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sinrtrack/estimator.hpp"
#include "sinrtrack/link_model.hpp"

namespace sinrtrack {

enum class ExpertLossKind {
    Threshold,  // 1 when the estimate lands on the wrong side of the sigmoid center
    Bce,
};

// Exponentially weighted pool of estimator instances with weight sharing, so
// the mixture can re-concentrate when the best parameter set changes.
// Weights are kept in log space; the multiplicative loss update would
// underflow over thousands of slots otherwise. Redistribution happens in
// linear space after exponentiation.
struct ExpertEnsemble {
    std::vector<EstimatorState> experts;
    std::vector<double> log_weights;  // normalized: logsumexp == 0
    std::vector<double> cumulative_loss;
    double learning_rate = 1.0;  // scales losses in the exponential update
    double share_rate = 1e-3;    // fraction of weight redistributed uniformly
    ExpertLossKind loss_kind = ExpertLossKind::Threshold;
    long uniform_resets = 0;  // degenerate-normalization diagnostics

    std::size_t size() const { return experts.size(); }
    std::vector<double> weights() const;  // linear, sums to 1
};

// Loss charged to one expert for the slot the event reports on.
double expert_loss(ExpertLossKind kind, const SigmoidLinkModel& model, double gamma_est,
                   const FeedbackEvent& event);

// Weighted average of the experts' current estimates.
double ensemble_predict(const ExpertEnsemble& ensemble);

// One slot: charge each expert its own loss, reweight, share, then advance
// every expert on the same event.
void ensemble_update(ExpertEnsemble& ensemble, const SigmoidLinkModel& model,
                     const CqiMap& cqi_map, const FeedbackEvent& event);

// Cartesian product of the parameter grids, uniform initial weights. Expert
// order: cqi_weight outermost, stepsize innermost.
ExpertEnsemble make_grid_ensemble(std::span<const double> cqi_weights,
                                  std::span<const double> momentums,
                                  std::span<const double> stepsizes, MomentumGate gate,
                                  double learning_rate, double share_rate,
                                  ExpertLossKind loss_kind = ExpertLossKind::Threshold,
                                  double init_db = 0.0);

// Estimate of the expert with the lowest cumulative loss (ties: lowest index).
double ftl_predict(const ExpertEnsemble& ensemble);

}  // namespace sinrtrack
