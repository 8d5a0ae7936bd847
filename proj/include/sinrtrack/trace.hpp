// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sinrtrack/link_model.hpp"

namespace sinrtrack {

struct RandomWalkSpec {
    double start_db = 0.0;
    double step_std_db = 0.1;  // per slot
};

struct SinusoidSpec {
    double amplitude_db = 0.0;
    double period_slots = 1000.0;
    double offset_db = 0.0;
};

struct StepChangesSpec {
    std::vector<double> levels_db;   // change_slots.size() + 1 entries
    std::vector<long> change_slots;  // strictly increasing, < length
};

using TraceSegment = std::variant<RandomWalkSpec, SinusoidSpec, StepChangesSpec>;

// Piecewise regimes: each segment restarts its pattern at its switch slot.
struct RegimeSwitchSpec {
    std::vector<TraceSegment> segments;  // switch_slots.size() + 1 entries
    std::vector<long> switch_slots;      // strictly increasing, < length
};

struct SinrTraceSpec {
    std::variant<RandomWalkSpec, SinusoidSpec, StepChangesSpec, RegimeSwitchSpec> kind;
    long length = 1000;
    std::uint64_t seed = 0;
};

// Ground-truth SINR trace, deterministic given the spec (seed included).
// Throws std::invalid_argument when the spec violates its invariants.
std::vector<sinr_db> gen_trace(const SinrTraceSpec& spec);

}  // namespace sinrtrack
