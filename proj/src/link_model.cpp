// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/link_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sinrtrack {

SigmoidLinkModel::SigmoidLinkModel(std::vector<McsCurve> ref_curves, double ref_cbs,
                                   double cbs_center_shift_db_per_decade,
                                   double cbs_scale_exponent, Interval scale_clip,
                                   Interval bler_clip)
    : ref_curves_(std::move(ref_curves)),
      ref_cbs_(ref_cbs),
      cbs_center_shift_db_per_decade_(cbs_center_shift_db_per_decade),
      cbs_scale_exponent_(cbs_scale_exponent),
      scale_clip_(scale_clip),
      bler_clip_(bler_clip) {
    if (ref_curves_.empty()) {
        throw std::invalid_argument("link model needs at least one MCS curve");
    }
    if (ref_cbs_ <= 0.0) {
        throw std::invalid_argument("reference CBS must be positive");
    }
    for (std::size_t u = 0; u < ref_curves_.size(); ++u) {
        if (!(ref_curves_[u].scale_db > 0.0)) {
            throw std::invalid_argument("sigmoid scale must be positive at MCS " +
                                        std::to_string(u));
        }
        if (u > 0 && !(ref_curves_[u].center_db > ref_curves_[u - 1].center_db)) {
            throw std::invalid_argument("sigmoid centers must be strictly increasing in MCS");
        }
    }
    if (!(scale_clip_.lo > 0.0) || scale_clip_.lo > scale_clip_.hi) {
        throw std::invalid_argument("invalid scale clip interval");
    }
    if (!(bler_clip_.lo > 0.0) || !(bler_clip_.hi < 1.0) || bler_clip_.lo > bler_clip_.hi) {
        throw std::invalid_argument("BLER clip must be inside (0, 1)");
    }
}

SigmoidLinkModel SigmoidLinkModel::linear_default(int num_mcs, double center0_db,
                                                  double center_step_db, double scale_db,
                                                  double ref_cbs) {
    std::vector<McsCurve> curves;
    curves.reserve(static_cast<std::size_t>(num_mcs));
    for (int u = 0; u < num_mcs; ++u) {
        curves.push_back({center0_db + center_step_db * u, scale_db});
    }
    return SigmoidLinkModel(std::move(curves), ref_cbs, 0.5, 0.1, {0.5, 2.0}, {0.01, 0.99});
}

void SigmoidLinkModel::check_mcs(int mcs) const {
    if (mcs < 0 || mcs >= num_mcs()) {
        throw std::out_of_range("unknown MCS index " + std::to_string(mcs));
    }
}

double SigmoidLinkModel::center_db(int mcs, int cbs) const {
    check_mcs(mcs);
    if (cbs <= 0) {
        throw std::invalid_argument("CBS must be positive");
    }
    return ref_curves_[static_cast<std::size_t>(mcs)].center_db +
           cbs_center_shift_db_per_decade_ * std::log10(static_cast<double>(cbs) / ref_cbs_);
}

double SigmoidLinkModel::scale_db(int mcs, int cbs) const {
    check_mcs(mcs);
    if (cbs <= 0) {
        throw std::invalid_argument("CBS must be positive");
    }
    return ref_curves_[static_cast<std::size_t>(mcs)].scale_db *
           std::pow(ref_cbs_ / static_cast<double>(cbs), cbs_scale_exponent_);
}

double bler(const SigmoidLinkModel& model, sinr_db gamma, int mcs, int cbs) {
    const double c = model.center_db(mcs, cbs);
    const double s = model.clipped_scale_db(mcs, cbs);
    // 1 - sigmoid(x) = 1 / (1 + e^x); overflow of e^x saturates to 0 before the clip
    const double p = 1.0 / (1.0 + std::exp((gamma - c) / s));
    return model.bler_clip().clamp(p);
}

double bce_loss(const SigmoidLinkModel& model, sinr_db gamma, int mcs, int cbs, int y) {
    const double p = bler(model, gamma, mcs, cbs);
    return y != 0 ? -std::log(p) : -std::log(1.0 - p);
}

double bce_grad(const SigmoidLinkModel& model, sinr_db gamma, int mcs, int cbs, int y) {
    const double p = bler(model, gamma, mcs, cbs);
    const double s = model.clipped_scale_db(mcs, cbs);
    return -(p - static_cast<double>(y)) / s;
}

CqiMap::CqiMap(std::vector<double> table_db) : table_db_(std::move(table_db)) {
    if (table_db_.size() != static_cast<std::size_t>(max_index)) {
        throw std::invalid_argument("CQI table must have 15 entries");
    }
    for (std::size_t i = 1; i < table_db_.size(); ++i) {
        if (!(table_db_[i] > table_db_[i - 1])) {
            throw std::invalid_argument("CQI table must be strictly increasing");
        }
    }
}

CqiMap CqiMap::linear_default() {
    std::vector<double> table(max_index);
    for (int k = 0; k < max_index; ++k) {
        table[static_cast<std::size_t>(k)] = -8.0 + 1.8 * k;
    }
    return CqiMap(std::move(table));
}

sinr_db CqiMap::to_sinr(int cqi) const {
    if (cqi < min_index || cqi > max_index) {
        throw std::out_of_range("CQI index " + std::to_string(cqi) + " outside 1..15");
    }
    return table_db_[static_cast<std::size_t>(cqi - 1)];
}

int CqiMap::to_cqi(sinr_db gamma) const {
    int cqi = min_index;
    for (int k = min_index; k <= max_index; ++k) {
        if (table_db_[static_cast<std::size_t>(k - 1)] <= gamma) {
            cqi = k;
        } else {
            break;
        }
    }
    return cqi;
}

}  // namespace sinrtrack
