// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinrtrack {

namespace {

// Shift the two-slot memory after producing a new estimate.
double commit(EstimatorState& state, double gamma_next, bool cqi_present) {
    if (state.params.estimate_clamp) {
        gamma_next = state.params.estimate_clamp->clamp(gamma_next);
    }
    state.gamma_prev2 = state.gamma_prev;
    state.gamma_prev = gamma_next;
    state.cqi_prev2 = state.cqi_prev;
    state.cqi_prev = cqi_present;
    return gamma_next;
}

double surprise_step(const SigmoidLinkModel& model, double at, const FeedbackEvent& e,
                     double stepsize) {
    const double p = bler(model, at, e.mcs, e.cbs);
    const double s = model.clipped_scale_db(e.mcs, e.cbs);
    return stepsize * (p - static_cast<double>(e.y)) / s;
}

bool momentum_enabled(MomentumGate gate, bool cqi_two_back) {
    switch (gate) {
        case MomentumGate::WhenCqiAbsent: return !cqi_two_back;
        case MomentumGate::WhenCqiPresent: return cqi_two_back;
        case MomentumGate::Always: return true;
    }
    return true;
}

}  // namespace

double step_ogd(EstimatorState& state, const SigmoidLinkModel& model, const FeedbackEvent& event) {
    const double next = state.gamma_prev + surprise_step(model, state.gamma_prev, event,
                                                         state.params.stepsize);
    return commit(state, next, event.cqi.has_value());
}

double step_hb(EstimatorState& state, const SigmoidLinkModel& model, const FeedbackEvent& event) {
    const double next = state.gamma_prev +
                        surprise_step(model, state.gamma_prev, event, state.params.stepsize) +
                        state.params.momentum * (state.gamma_prev - state.gamma_prev2);
    return commit(state, next, event.cqi.has_value());
}

double step_nag(EstimatorState& state, const SigmoidLinkModel& model, const FeedbackEvent& event) {
    const double lookahead =
        state.gamma_prev + state.params.momentum * (state.gamma_prev - state.gamma_prev2);
    const double next = lookahead + surprise_step(model, lookahead, event, state.params.stepsize);
    return commit(state, next, event.cqi.has_value());
}

double step_full(EstimatorState& state, const SigmoidLinkModel& model, const CqiMap& cqi_map,
                 const FeedbackEvent& event) {
    const bool cqi_present = event.cqi.has_value();
    const double alpha = cqi_present ? state.params.cqi_weight : 0.0;
    const double beta =
        momentum_enabled(state.params.gate, state.cqi_prev) ? state.params.momentum : 0.0;

    const double lookahead = state.gamma_prev + beta * (state.gamma_prev - state.gamma_prev2);
    const double ack_nack_estimate =
        lookahead + surprise_step(model, lookahead, event, state.params.stepsize);
    const double next = cqi_present
                            ? alpha * cqi_map.to_sinr(*event.cqi) + (1.0 - alpha) * ack_nack_estimate
                            : ack_nack_estimate;
    return commit(state, next, cqi_present);
}

double alpha_from_lambda(double stepsize, double lambda) {
    if (stepsize < 0.0 || lambda < 0.0) {
        throw std::invalid_argument("stepsize and lambda must be nonnegative");
    }
    const double el = stepsize * lambda;
    return el / (1.0 + el);
}

double mirror_step_numeric(const SigmoidLinkModel& model, const CqiMap& cqi_map,
                           double gamma_prev, const FeedbackEvent& event, double stepsize,
                           double lambda) {
    if (lambda < 0.0) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
    if (lambda > 0.0 && !event.cqi.has_value()) {
        throw std::invalid_argument("CQI report required when lambda > 0");
    }
    // Proximal weight diverges as the stepsize vanishes; the argmin is the
    // previous estimate.
    if (stepsize <= 0.0) {
        return gamma_prev;
    }

    const double g = bce_grad(model, gamma_prev, event.mcs, event.cbs, event.y);
    const double cqi_sinr = lambda > 0.0 ? cqi_map.to_sinr(*event.cqi) : gamma_prev;
    const auto objective = [&](double gamma) {
        double v = g * gamma + (gamma - gamma_prev) * (gamma - gamma_prev) / (2.0 * stepsize);
        if (lambda > 0.0) {
            v += 0.5 * lambda * (gamma - cqi_sinr) * (gamma - cqi_sinr);
        }
        return v;
    };

    // Bracket around the unregularized step and the CQI anchor, then shrink
    // by ternary search. The objective is quadratic, so a final three-point
    // parabolic fit pins the vertex to machine precision.
    const double unreg = gamma_prev - stepsize * g;
    double lo = std::min(unreg, cqi_sinr) - 1.0;
    double hi = std::max(unreg, cqi_sinr) + 1.0;
    while (hi - lo > 1e-4) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (objective(m1) < objective(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    const double a = lo;
    const double b = 0.5 * (lo + hi);
    const double c = hi;
    const double fa = objective(a);
    const double fb = objective(b);
    const double fc = objective(c);
    const double denom = (b - a) * (fb - fc) - (b - c) * (fb - fa);
    if (std::abs(denom) < 1e-300) {
        return b;
    }
    return b - 0.5 * ((b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa)) / denom;
}

}  // namespace sinrtrack
