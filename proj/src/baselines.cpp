// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinrtrack {

double OllaState::current_step_db() const {
    if (!decay) {
        return step_db;
    }
    return decay->step_floor_db +
           (step_db - decay->step_floor_db) *
               std::exp(-decay->decay_rate * static_cast<double>(steps_taken));
}

double olla_step(OllaState& state, int y) {
    const double step = state.current_step_db();
    if (y != 0) {
        state.estimate_db -= step;
    } else {
        state.estimate_db += step * state.bler_target / (1.0 - state.bler_target);
    }
    ++state.steps_taken;
    return state.estimate_db;
}

LtsState LtsState::uniform(double lo_db, double hi_db, double step_db) {
    if (!(step_db > 0.0) || !(hi_db > lo_db)) {
        throw std::invalid_argument("LTS grid requires lo < hi and positive step");
    }
    LtsState state;
    for (double g = lo_db; g <= hi_db + 1e-9; g += step_db) {
        state.grid_db.push_back(g);
    }
    state.log_posterior.assign(state.grid_db.size(),
                               -std::log(static_cast<double>(state.grid_db.size())));
    return state;
}

double LtsState::estimate() const {
    double mean = 0.0;
    for (std::size_t i = 0; i < grid_db.size(); ++i) {
        mean += std::exp(log_posterior[i]) * grid_db[i];
    }
    return mean;
}

double lts_step(LtsState& state, const SigmoidLinkModel& model, const FeedbackEvent& event) {
    for (std::size_t i = 0; i < state.grid_db.size(); ++i) {
        const double p = bler(model, state.grid_db[i], event.mcs, event.cbs);
        // BLER clipping keeps both likelihoods strictly positive, so the
        // posterior cannot collapse.
        state.log_posterior[i] += event.y != 0 ? std::log(p) : std::log(1.0 - p);
    }
    const double m = *std::max_element(state.log_posterior.begin(), state.log_posterior.end());
    double acc = 0.0;
    for (double lp : state.log_posterior) {
        acc += std::exp(lp - m);
    }
    const double lse = m + std::log(acc);
    for (double& lp : state.log_posterior) {
        lp -= lse;
    }
    return state.estimate();
}

EstimatorParams salad_preset() {
    EstimatorParams params;
    params.cqi_weight = 0.0;
    params.momentum = 0.0;
    params.stepsize = 1.0;
    return params;
}

}  // namespace sinrtrack
