// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace sinrtrack {

// SINR in dB. Estimates and simulated truth are plain scalars throughout.
using sinr_db = double;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

// Sigmoid parameters of one MCS at the reference code block size.
struct McsCurve {
    double center_db = 0.0;
    double scale_db = 1.0;
};

// BLER(gamma; u, b) = clip(1 - sigmoid((gamma - c(u,b)) / s(u,b))).
//
// Reference curves are pinned at ref_cbs; other block sizes are resolved
// parametrically: centers shift by a fixed dB-per-decade slope (larger blocks
// need more SINR) and scales steepen for larger blocks via a power law. MCS
// indices outside the table are an error, block sizes never are.
class SigmoidLinkModel {
  public:
    SigmoidLinkModel(std::vector<McsCurve> ref_curves, double ref_cbs,
                     double cbs_center_shift_db_per_decade, double cbs_scale_exponent,
                     Interval scale_clip, Interval bler_clip);

    // 28 MCS indices, centers -6 + 0.9 u dB and unit scale at CBS 1000.
    static SigmoidLinkModel linear_default(int num_mcs = 28, double center0_db = -6.0,
                                           double center_step_db = 0.9, double scale_db = 1.0,
                                           double ref_cbs = 1000.0);

    int num_mcs() const { return static_cast<int>(ref_curves_.size()); }
    double center_db(int mcs, int cbs) const;
    double scale_db(int mcs, int cbs) const;  // pre-clip
    double clipped_scale_db(int mcs, int cbs) const { return scale_clip_.clamp(scale_db(mcs, cbs)); }

    const Interval& scale_clip() const { return scale_clip_; }
    const Interval& bler_clip() const { return bler_clip_; }
    double ref_cbs() const { return ref_cbs_; }

  private:
    void check_mcs(int mcs) const;

    std::vector<McsCurve> ref_curves_;
    double ref_cbs_;
    double cbs_center_shift_db_per_decade_;
    double cbs_scale_exponent_;
    Interval scale_clip_;
    Interval bler_clip_;
};

// Block error probability at the given SINR, clipped to the model's BLER
// interval. Strictly decreasing in gamma wherever the clip is inactive.
double bler(const SigmoidLinkModel& model, sinr_db gamma, int mcs, int cbs);

// Binary cross-entropy between the ACK/NACK bit y (0 = ACK, 1 = NACK) and the
// clipped BLER. Finite for all gamma thanks to the clip.
double bce_loss(const SigmoidLinkModel& model, sinr_db gamma, int mcs, int cbs, int y);

// d(bce_loss)/d(gamma) evaluated with the clipped BLER, i.e.
// -(BLER(gamma) - y) / s_clipped. Zero-biased where the BLER clip is active.
double bce_grad(const SigmoidLinkModel& model, sinr_db gamma, int mcs, int cbs, int y);

// Monotone CQI index (1..15) <-> SINR mapping.
class CqiMap {
  public:
    explicit CqiMap(std::vector<double> table_db);

    // Affine placeholder map: -8 + 1.8 (cqi - 1) dB.
    static CqiMap linear_default();

    static constexpr int min_index = 1;
    static constexpr int max_index = 15;

    // Table lookup; throws std::out_of_range outside 1..15.
    sinr_db to_sinr(int cqi) const;

    // Largest index whose mapped value does not exceed gamma, saturating at
    // the table ends. Left inverse of to_sinr on table entries.
    int to_cqi(sinr_db gamma) const;

    const std::vector<double>& table_db() const { return table_db_; }

  private:
    std::vector<double> table_db_;
};

}  // namespace sinrtrack
