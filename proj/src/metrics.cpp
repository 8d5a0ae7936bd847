// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinrtrack {

double rmse(std::span<const double> estimates, std::span<const double> truth) {
    if (estimates.size() != truth.size() || estimates.empty()) {
        throw std::invalid_argument("rmse needs two equal-length non-empty series");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const double d = estimates[i] - truth[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(estimates.size()));
}

std::vector<double> percentiles(std::vector<double> values, std::span<const double> ps) {
    if (values.empty()) {
        throw std::invalid_argument("percentiles of an empty set");
    }
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    out.reserve(ps.size());
    const double n = static_cast<double>(values.size());
    for (double p : ps) {
        if (p < 0.0 || p > 100.0) {
            throw std::invalid_argument("percentile outside [0, 100]");
        }
        const double rank = p / 100.0 * (n - 1.0);
        const auto lo = static_cast<std::size_t>(rank);
        const double frac = rank - static_cast<double>(lo);
        double v = values[lo];
        // equal neighbors include the infinite-sentinel case
        if (lo + 1 < values.size() && frac > 0.0 && values[lo + 1] != values[lo]) {
            v += frac * (values[lo + 1] - values[lo]);
        }
        out.push_back(v);
    }
    return out;
}

double ranking_cdf(double meta_rmse, std::span<const double> expert_rmses) {
    if (expert_rmses.empty()) {
        throw std::invalid_argument("ranking against an empty expert set");
    }
    std::size_t below = 0;
    for (double r : expert_rmses) {
        if (r < meta_rmse) {
            ++below;
        }
    }
    return static_cast<double>(below) / static_cast<double>(expert_rmses.size());
}

double regret(std::span<const double> losses_alg, std::span<const double> losses_cand) {
    if (losses_alg.size() != losses_cand.size()) {
        throw std::invalid_argument("regret needs equal-length loss series");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < losses_alg.size(); ++i) {
        acc += losses_alg[i] - losses_cand[i];
    }
    return acc;
}

double path_length(std::span<const double> candidate) {
    if (candidate.empty()) {
        throw std::invalid_argument("path length of an empty sequence");
    }
    double acc = 0.0;
    for (std::size_t i = 1; i < candidate.size(); ++i) {
        acc += std::abs(candidate[i] - candidate[i - 1]);
    }
    return acc;
}

StepResponse step_response(std::span<const double> estimates, std::span<const double> truth,
                           long step_slot, double band_db, long hold_slots,
                           long overshoot_window) {
    if (estimates.size() != truth.size() || estimates.empty()) {
        throw std::invalid_argument("step response needs equal-length non-empty series");
    }
    const long horizon = static_cast<long>(estimates.size());
    if (step_slot < 1 || step_slot >= horizon) {
        throw std::invalid_argument("step slot outside the trace");
    }

    StepResponse out;
    const double level_after = truth[static_cast<std::size_t>(step_slot)];
    const double direction =
        level_after >= truth[static_cast<std::size_t>(step_slot - 1)] ? 1.0 : -1.0;

    long run = 0;
    for (long t = step_slot; t < horizon; ++t) {
        const std::size_t i = static_cast<std::size_t>(t);
        if (std::abs(estimates[i] - truth[i]) < band_db) {
            ++run;
            if (run >= hold_slots) {
                out.settling_slots = t - run + 1 - step_slot;
                break;
            }
        } else {
            run = 0;
        }
    }

    const long window_end = overshoot_window > horizon - step_slot
                                ? horizon
                                : step_slot + overshoot_window;
    double worst = 0.0;
    for (long t = step_slot; t < window_end; ++t) {
        worst = std::max(worst,
                         direction * (estimates[static_cast<std::size_t>(t)] - level_after));
    }
    out.overshoot_db = worst;
    return out;
}

double spectral_efficiency(const TraceDataset& dataset, double rate_per_mcs_step) {
    if (dataset.records.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto& rec : dataset.records) {
        if (rec.y == 0) {
            acc += rate_per_mcs_step * static_cast<double>(rec.mcs + 1);
        }
    }
    return acc / static_cast<double>(dataset.records.size());
}

std::pair<double, double> hindsight_best_constant(const SigmoidLinkModel& model,
                                                  std::span<const FeedbackEvent> events,
                                                  double lo_db, double hi_db,
                                                  double grid_step_db) {
    double best_gamma = lo_db;
    double best_loss = std::numeric_limits<double>::infinity();
    for (double g = lo_db; g <= hi_db + 1e-9; g += grid_step_db) {
        double total = 0.0;
        for (const auto& e : events) {
            total += bce_loss(model, g, e.mcs, e.cbs, e.y);
        }
        if (total < best_loss) {
            best_loss = total;
            best_gamma = g;
        }
    }
    return {best_gamma, best_loss};
}

}  // namespace sinrtrack
