// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "sinrtrack/link_model.hpp"

namespace sinrtrack {

// Whether the momentum term is applied, decided on CQI presence two slots
// back (the slot whose report entered the previous estimate).
enum class MomentumGate {
    WhenCqiAbsent,   // momentum unless CQI was reported (prose variant, default)
    WhenCqiPresent,  // momentum only if CQI was reported (algorithm-listing variant)
    Always,
};

struct EstimatorParams {
    double cqi_weight = 0.0;  // convex weight on the CQI-mapped estimate, in [0, 1]
    double momentum = 0.0;
    double stepsize = 1.0;
    MomentumGate gate = MomentumGate::WhenCqiAbsent;
    // Safety clamp on the estimate itself; disabled by default, estimates
    // range freely.
    std::optional<Interval> estimate_clamp;
};

// One slot's worth of matured feedback. (mcs, cbs) are the parameters of the
// slot the feedback refers to, so delayed delivery still evaluates the right
// sigmoid. y: 0 = ACK, 1 = NACK. cqi present only when the UE reported one.
struct FeedbackEvent {
    int mcs = 0;
    int cbs = 1000;
    int y = 0;
    std::optional<int> cqi;
};

// Mutable state of one estimator instance: the last two estimates plus CQI
// presence for the last two consumed events (drives the momentum gate).
struct EstimatorState {
    double gamma_prev = 0.0;
    double gamma_prev2 = 0.0;
    EstimatorParams params;
    bool cqi_prev = false;
    bool cqi_prev2 = false;

    static EstimatorState init(const EstimatorParams& params, double gamma0_db = 0.0) {
        EstimatorState st;
        st.gamma_prev = gamma0_db;
        st.gamma_prev2 = gamma0_db;
        st.params = params;
        return st;
    }
};

// Plain gradient step on the BCE loss; ignores CQI and momentum.
double step_ogd(EstimatorState& state, const SigmoidLinkModel& model, const FeedbackEvent& event);

// Gradient step plus heavy-ball momentum (gradient at the current estimate).
double step_hb(EstimatorState& state, const SigmoidLinkModel& model, const FeedbackEvent& event);

// Nesterov variant: gradient evaluated at the momentum look-ahead point.
double step_nag(EstimatorState& state, const SigmoidLinkModel& model, const FeedbackEvent& event);

// Full estimator: gated Nesterov momentum, gradient step, then convex fusion
// with the CQI-mapped estimate when a report is present.
double step_full(EstimatorState& state, const SigmoidLinkModel& model, const CqiMap& cqi_map,
                 const FeedbackEvent& event);

// CQI weight implied by the regularizer strength: stepsize*lambda / (1 + stepsize*lambda).
double alpha_from_lambda(double stepsize, double lambda);

// Numeric counterpart of the fused update: minimizes the linearized loss plus
// the proximal term plus the CQI regularizer by one-dimensional convex search.
// Used to cross-check the closed form; never calls it.
double mirror_step_numeric(const SigmoidLinkModel& model, const CqiMap& cqi_map,
                           double gamma_prev, const FeedbackEvent& event, double stepsize,
                           double lambda);

}  // namespace sinrtrack
