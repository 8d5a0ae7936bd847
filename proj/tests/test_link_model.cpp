// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <doctest.h>
#include <stdexcept>
#include <vector>

#include "sinrtrack/link_model.hpp"
#include "sinrtrack/rng.hpp"

using namespace sinrtrack;

namespace {

SigmoidLinkModel single_curve(double center, double scale) {
    return SigmoidLinkModel({{center, scale}}, 1000.0, 0.5, 0.1, {0.5, 2.0}, {0.01, 0.99});
}

// Independent derivative oracle: central finite difference of the loss.
double fd_grad(const SigmoidLinkModel& m, double gamma, int mcs, int cbs, int y,
               double h = 1e-5) {
    return (bce_loss(m, gamma + h, mcs, cbs, y) - bce_loss(m, gamma - h, mcs, cbs, y)) /
           (2.0 * h);
}

}  // namespace

TEST_CASE("bler at the sigmoid center is one half") {
    for (double s : {0.5, 1.0, 2.0}) {
        const auto m = single_curve(3.0, s);
        CHECK(bler(m, 3.0, 0, 1000) == doctest::Approx(0.5));
    }
}

TEST_CASE("bler saturates at the clip bounds") {
    const auto m = single_curve(0.0, 1.0);
    CHECK(bler(m, 1e3, 0, 1000) == doctest::Approx(0.01));
    CHECK(bler(m, -1e3, 0, 1000) == doctest::Approx(0.99));
}

TEST_CASE("bler closed-form point: center + scale ln 9 gives 0.1") {
    const auto m = single_curve(2.0, 1.5);
    CHECK(bler(m, 2.0 + 1.5 * std::log(9.0), 0, 1000) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("bler is non-increasing in gamma and strictly decreasing when unclipped") {
    const auto m = single_curve(0.0, 1.0);
    double prev = bler(m, -8.0, 0, 1000);
    for (double g = -7.9; g <= 8.0; g += 0.1) {
        const double p = bler(m, g, 0, 1000);
        CHECK(p <= prev + 1e-15);
        if (prev < 0.99 && p > 0.01) {
            CHECK(p < prev);
        }
        prev = p;
    }
}

TEST_CASE("higher MCS has higher BLER at fixed gamma") {
    const auto m = SigmoidLinkModel::linear_default();
    for (double g : {-5.0, 0.0, 5.0, 15.0}) {
        for (int u = 0; u + 1 < m.num_mcs(); ++u) {
            CHECK(bler(m, g, u + 1, 1000) >= bler(m, g, u, 1000));
        }
    }
}

TEST_CASE("unknown MCS is an error") {
    const auto m = SigmoidLinkModel::linear_default();
    CHECK_THROWS_AS((void)bler(m, 0.0, 28, 1000), std::out_of_range);
    CHECK_THROWS_AS((void)bler(m, 0.0, -1, 1000), std::out_of_range);
}

TEST_CASE("CBS dependence follows the configured laws") {
    const auto m = SigmoidLinkModel::linear_default();
    // one decade below the reference block size
    CHECK(m.center_db(4, 100) == doctest::Approx(m.center_db(4, 1000) - 0.5));
    CHECK(m.scale_db(4, 100) == doctest::Approx(1.0 * std::pow(10.0, 0.1)));
    CHECK(m.clipped_scale_db(4, 100) == doctest::Approx(std::pow(10.0, 0.1)));
}

TEST_CASE("model construction rejects bad tables") {
    CHECK_THROWS_AS(SigmoidLinkModel({{0.0, 1.0}, {-1.0, 1.0}}, 1000.0, 0.5, 0.1, {0.5, 2.0},
                                     {0.01, 0.99}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SigmoidLinkModel({{0.0, -1.0}}, 1000.0, 0.5, 0.1, {0.5, 2.0}, {0.01, 0.99}),
                    std::invalid_argument);
}

TEST_CASE("bce_loss matches hand values") {
    const auto m = single_curve(0.0, 1.0);
    // deep fade: BLER clipped to 0.99
    CHECK(bce_loss(m, -100.0, 0, 1000, 1) == doctest::Approx(-std::log(0.99)));
    CHECK(bce_loss(m, 0.0, 0, 1000, 0) == doctest::Approx(-std::log(0.5)));
}

TEST_CASE("bce_loss is monotone toward the clip boundary matching y") {
    const auto m = single_curve(0.0, 1.0);
    double prev_ack = bce_loss(m, -6.0, 0, 1000, 0);
    double prev_nack = bce_loss(m, 6.0, 0, 1000, 1);
    for (double g = -5.9; g <= 6.0; g += 0.1) {
        CHECK(bce_loss(m, g, 0, 1000, 0) <= prev_ack + 1e-12);
        prev_ack = bce_loss(m, g, 0, 1000, 0);
    }
    for (double g = 5.9; g >= -6.0; g -= 0.1) {
        CHECK(bce_loss(m, g, 0, 1000, 1) <= prev_nack + 1e-12);
        prev_nack = bce_loss(m, g, 0, 1000, 1);
    }
}

TEST_CASE("bce_grad midpoint values") {
    const auto m = single_curve(0.0, 1.0);
    CHECK(bce_grad(m, 0.0, 0, 1000, 0) == doctest::Approx(-0.5));
    CHECK(bce_grad(m, 0.0, 0, 1000, 1) == doctest::Approx(0.5));
}

TEST_CASE("bce_grad equals the finite-difference derivative away from clips") {
    Rng rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double c = rng.uniform(-10.0, 20.0);
        const double s = rng.uniform(0.5, 2.0);
        const double gamma = c + s * rng.uniform(-4.0, 4.0);
        const int y = rng.bernoulli(0.5) ? 1 : 0;
        const auto m = single_curve(c, s);
        const double g = bce_grad(m, gamma, 0, 1000, y);
        const double fd = fd_grad(m, gamma, 0, 1000, y);
        worst = std::max(worst, std::abs(g - fd) / std::abs(fd));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("bce_loss is convex where the clip is inactive") {
    const auto m = single_curve(0.0, 1.0);
    const double h = 0.05;
    for (int y : {0, 1}) {
        for (double g = -4.0; g <= 4.0; g += 0.1) {
            const double second = bce_loss(m, g - h, 0, 1000, y) -
                                  2.0 * bce_loss(m, g, 0, 1000, y) +
                                  bce_loss(m, g + h, 0, 1000, y);
            CHECK(second >= -1e-9);
        }
    }
}

TEST_CASE("CQI map boundaries and monotonicity") {
    const auto map = CqiMap::linear_default();
    CHECK(map.to_sinr(1) == doctest::Approx(-8.0));
    CHECK(map.to_sinr(15) == doctest::Approx(-8.0 + 1.8 * 14));
    for (int k = 2; k <= 15; ++k) {
        CHECK(map.to_sinr(k) > map.to_sinr(k - 1));
    }
    CHECK_THROWS_AS((void)map.to_sinr(0), std::out_of_range);
    CHECK_THROWS_AS((void)map.to_sinr(16), std::out_of_range);
}

TEST_CASE("CQI quantization saturates and inverts the table") {
    const auto map = CqiMap::linear_default();
    CHECK(map.to_cqi(-100.0) == 1);
    CHECK(map.to_cqi(100.0) == 15);
    for (int k = 1; k <= 15; ++k) {
        CHECK(map.to_cqi(map.to_sinr(k)) == k);
    }
    // halfway between entries rounds down
    CHECK(map.to_cqi(map.to_sinr(7) + 0.9) == 7);
}

TEST_CASE("CQI map rejects non-monotone tables") {
    std::vector<double> bad(15);
    for (int i = 0; i < 15; ++i) {
        bad[static_cast<std::size_t>(i)] = static_cast<double>(i);
    }
    bad[7] = bad[6];
    CHECK_THROWS_AS(CqiMap{bad}, std::invalid_argument);
}
