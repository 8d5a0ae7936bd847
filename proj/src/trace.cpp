// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/trace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sinrtrack/rng.hpp"

namespace sinrtrack {

namespace {

void check_marks(const std::vector<long>& marks, long length, const char* what) {
    long prev = 0;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (marks[i] <= 0 || marks[i] >= length) {
            throw std::invalid_argument(std::string(what) + " must lie inside (0, length)");
        }
        if (i > 0 && marks[i] <= prev) {
            throw std::invalid_argument(std::string(what) + " must be strictly increasing");
        }
        prev = marks[i];
    }
}

// Fill trace[begin..end) from one segment, slot index local to the segment.
void fill_segment(std::vector<sinr_db>& trace, long begin, long end, const TraceSegment& segment,
                  Rng& rng) {
    if (const auto* walk = std::get_if<RandomWalkSpec>(&segment)) {
        double level = walk->start_db;
        for (long t = begin; t < end; ++t) {
            trace[static_cast<std::size_t>(t)] = level;
            level += rng.normal(0.0, walk->step_std_db);
        }
    } else if (const auto* sine = std::get_if<SinusoidSpec>(&segment)) {
        if (!(sine->period_slots > 0.0)) {
            throw std::invalid_argument("sinusoid period must be positive");
        }
        for (long t = begin; t < end; ++t) {
            const double phase =
                2.0 * std::numbers::pi * static_cast<double>(t - begin) / sine->period_slots;
            trace[static_cast<std::size_t>(t)] = sine->offset_db + sine->amplitude_db * std::sin(phase);
        }
    } else {
        const auto& steps = std::get<StepChangesSpec>(segment);
        if (steps.levels_db.size() != steps.change_slots.size() + 1) {
            throw std::invalid_argument("step trace needs one more level than change slots");
        }
        check_marks(steps.change_slots, end - begin, "change slots");
        std::size_t level_idx = 0;
        for (long t = begin; t < end; ++t) {
            const long local = t - begin;
            while (level_idx < steps.change_slots.size() &&
                   local >= steps.change_slots[level_idx]) {
                ++level_idx;
            }
            trace[static_cast<std::size_t>(t)] = steps.levels_db[level_idx];
        }
    }
}

}  // namespace

std::vector<sinr_db> gen_trace(const SinrTraceSpec& spec) {
    if (spec.length < 1) {
        throw std::invalid_argument("trace length must be at least 1");
    }
    std::vector<sinr_db> trace(static_cast<std::size_t>(spec.length));
    Rng rng = Rng(spec.seed).substream(rng_role::channel);

    if (const auto* regimes = std::get_if<RegimeSwitchSpec>(&spec.kind)) {
        if (regimes->segments.size() != regimes->switch_slots.size() + 1) {
            throw std::invalid_argument("regime switch needs one more segment than switch slots");
        }
        check_marks(regimes->switch_slots, spec.length, "switch slots");
        long begin = 0;
        for (std::size_t i = 0; i < regimes->segments.size(); ++i) {
            const long end =
                i < regimes->switch_slots.size() ? regimes->switch_slots[i] : spec.length;
            fill_segment(trace, begin, end, regimes->segments[i], rng);
            begin = end;
        }
        return trace;
    }

    TraceSegment segment = std::visit(
        [](const auto& k) -> TraceSegment {
            if constexpr (std::is_same_v<std::decay_t<decltype(k)>, RegimeSwitchSpec>) {
                throw std::logic_error("unreachable");
            } else {
                return TraceSegment(k);
            }
        },
        spec.kind);
    fill_segment(trace, 0, spec.length, segment, rng);
    return trace;
}

}  // namespace sinrtrack
