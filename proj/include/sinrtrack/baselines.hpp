// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "sinrtrack/estimator.hpp"
#include "sinrtrack/link_model.hpp"

namespace sinrtrack {

// Exponentially decaying step size for the NOLLA variant:
// step(t) = floor + (step0 - floor) e^{-rate t}.
struct NollaDecay {
    double step_floor_db = 0.1;
    double decay_rate = 0.002;  // per slot
};

// Outer-loop link adaptation offset tracker. The estimate drops by the step
// on a NACK and rises by step * target/(1-target) on an ACK, so the long-run
// drift vanishes exactly when the NACK rate sits at the target.
struct OllaState {
    double estimate_db = 0.0;
    double step_db = 1.0;
    double bler_target = 0.1;
    std::optional<NollaDecay> decay;  // set for NOLLA
    long steps_taken = 0;

    // Step magnitude in effect for the next update.
    double current_step_db() const;
};

double olla_step(OllaState& state, int y);

// Discretized Bayesian SINR tracker: a posterior over a fixed SINR grid,
// updated with the ACK/NACK likelihood of the sigmoid link model. The point
// estimate is the posterior mean.
struct LtsState {
    std::vector<double> grid_db;
    std::vector<double> log_posterior;  // normalized

    static LtsState uniform(double lo_db = -20.0, double hi_db = 40.0, double step_db = 0.25);

    double estimate() const;
};

double lts_step(LtsState& state, const SigmoidLinkModel& model, const FeedbackEvent& event);

// Parameters that reduce the full estimator to its predecessor: unit
// stepsize, no momentum, no CQI reliance.
EstimatorParams salad_preset();

}  // namespace sinrtrack
