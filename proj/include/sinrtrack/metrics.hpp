// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sinrtrack/estimator.hpp"
#include "sinrtrack/link_model.hpp"
#include "sinrtrack/simulator.hpp"

namespace sinrtrack {

double rmse(std::span<const double> estimates, std::span<const double> truth);

// Linear-interpolation percentiles: rank = p/100 * (n - 1) on the sorted
// values, interpolating between neighbors. p = 0 and p = 100 are min / max.
std::vector<double> percentiles(std::vector<double> values, std::span<const double> ps);

// Fraction of experts with RMSE strictly below the meta algorithm's (ties
// count as not-below).
double ranking_cdf(double meta_rmse, std::span<const double> expert_rmses);

// Cumulative loss gap between an algorithm and a candidate sequence.
double regret(std::span<const double> losses_alg, std::span<const double> losses_cand);

// Total variation of a candidate sequence.
double path_length(std::span<const double> candidate);

struct StepResponse {
    // Slots from the step until the error first stays inside the band for
    // `hold` consecutive slots; absent when it never settles.
    std::optional<long> settling_slots;
    double overshoot_db = 0.0;  // beyond the post-step level, floored at 0
};

// Settling scans the whole remaining trace; overshoot is taken over the
// post-step window [step_slot, step_slot + overshoot_window), clamped to the
// trace end (default: the whole tail).
StepResponse step_response(std::span<const double> estimates, std::span<const double> truth,
                           long step_slot, double band_db, long hold_slots,
                           long overshoot_window = std::numeric_limits<long>::max());

// Mean per-slot rate over the dataset: (1 - y) * rate(mcs) with the default
// linear rate table rate(u) = rate_per_mcs_step * (u + 1).
double spectral_efficiency(const TraceDataset& dataset, double rate_per_mcs_step = 0.2);

// Best constant estimate in hindsight for the summed BCE loss, by grid
// search on [-20, 40] dB at 0.1 dB spacing. Returns (gamma, total loss).
std::pair<double, double> hindsight_best_constant(const SigmoidLinkModel& model,
                                                  std::span<const FeedbackEvent> events,
                                                  double lo_db = -20.0, double hi_db = 40.0,
                                                  double grid_step_db = 0.1);

}  // namespace sinrtrack
