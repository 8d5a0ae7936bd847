// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <numeric>
#include <vector>

#include "sinrtrack/baselines.hpp"
#include "sinrtrack/metrics.hpp"
#include "sinrtrack/rng.hpp"
#include "sinrtrack/trace.hpp"

using namespace sinrtrack;

TEST_CASE("rmse basics") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(rmse(a, a) == 0.0);

    const std::vector<double> shifted{3.5, 4.5, 5.5};
    CHECK(rmse(shifted, a) == doctest::Approx(2.5));

    const std::vector<double> est{0.0, 0.0};
    const std::vector<double> truth{3.0, -4.0};
    CHECK(rmse(est, truth) == doctest::Approx(std::sqrt(12.5)));

    CHECK_THROWS_AS((void)rmse(est, a), std::invalid_argument);
}

TEST_CASE("rmse is invariant under a shared permutation") {
    Rng rng(6);
    std::vector<double> est(64), truth(64);
    for (std::size_t i = 0; i < est.size(); ++i) {
        est[i] = rng.uniform(-10.0, 10.0);
        truth[i] = rng.uniform(-10.0, 10.0);
    }
    const double base = rmse(est, truth);
    std::vector<std::size_t> idx(est.size());
    std::iota(idx.begin(), idx.end(), 0u);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::swap(idx[i - 1], idx[rng.next_u64() % i]);
        }
        std::vector<double> e2, t2;
        for (std::size_t k : idx) {
            e2.push_back(est[k]);
            t2.push_back(truth[k]);
        }
        CHECK(rmse(e2, t2) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("percentiles use linear interpolation") {
    const double ps[] = {50.0};
    CHECK(percentiles({7.5}, ps)[0] == 7.5);

    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 1.0);
    CHECK(percentiles(v, ps)[0] == doctest::Approx(50.5));

    const double ends[] = {0.0, 100.0};
    const auto mm = percentiles(v, ends);
    CHECK(mm[0] == 1.0);
    CHECK(mm[1] == 100.0);

    const double triple[] = {20.0, 50.0, 80.0};
    const auto t = percentiles({4.0, 1.0, 3.0, 2.0, 5.0}, triple);
    CHECK(t[0] <= t[1]);
    CHECK(t[1] <= t[2]);
}

TEST_CASE("ranking_cdf counts strictly better experts") {
    const std::vector<double> experts{1.0, 2.0, 3.0, 4.0};
    CHECK(ranking_cdf(0.5, experts) == 0.0);
    CHECK(ranking_cdf(10.0, experts) == 1.0);
    CHECK(ranking_cdf(2.0, experts) == doctest::Approx(0.25));  // tie not counted
    const std::vector<double> one{1.7};
    CHECK(ranking_cdf(1.7, one) == 0.0);
}

TEST_CASE("regret is the cumulative loss gap and is additive over segments") {
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    CHECK(regret(a, a) == 0.0);
    const std::vector<double> b{0.5, 2.5, 2.0, 4.5};
    const double whole = regret(a, b);
    const double parts = regret(std::span(a).subspan(0, 2), std::span(b).subspan(0, 2)) +
                         regret(std::span(a).subspan(2), std::span(b).subspan(2));
    CHECK(whole == doctest::Approx(parts));
}

TEST_CASE("regret against the hindsight-optimal constant is nonnegative") {
    const auto m = SigmoidLinkModel::linear_default();
    Rng rng(19);
    std::vector<FeedbackEvent> events;
    std::vector<double> alg_losses;
    // an arbitrary wandering estimate sequence
    double est = 0.0;
    for (int t = 0; t < 400; ++t) {
        FeedbackEvent e{static_cast<int>(rng.next_u64() % 28), 1000,
                        rng.bernoulli(0.3) ? 1 : 0, std::nullopt};
        events.push_back(e);
        alg_losses.push_back(bce_loss(m, est, e.mcs, e.cbs, e.y));
        est += rng.uniform(-0.5, 0.5);
    }
    const auto [best_gamma, best_total] = hindsight_best_constant(m, events);
    std::vector<double> cand_losses;
    for (const auto& e : events) {
        cand_losses.push_back(bce_loss(m, best_gamma, e.mcs, e.cbs, e.y));
    }
    CHECK(regret(alg_losses, cand_losses) >= 0.0);
    CHECK(best_total == doctest::Approx(std::accumulate(cand_losses.begin(), cand_losses.end(),
                                                        0.0)));
}

TEST_CASE("OGD static regret rate shrinks over doubling horizons") {
    const auto m = SigmoidLinkModel::linear_default();
    const auto map = CqiMap::linear_default();
    Rng rng(23);

    // stationary Bernoulli feedback at a fixed operating point
    const int mcs = 12;
    const double p_true = 0.35;
    const long total = 4000;
    std::vector<FeedbackEvent> events;
    for (long t = 0; t < total; ++t) {
        events.push_back({mcs, 1000, rng.bernoulli(p_true) ? 1 : 0, std::nullopt});
    }

    EstimatorParams params;
    params.stepsize = 0.5;
    auto st = EstimatorState::init(params, 0.0);
    std::vector<double> alg_losses;
    for (const auto& e : events) {
        alg_losses.push_back(bce_loss(m, st.gamma_prev, e.mcs, e.cbs, e.y));
        step_ogd(st, m, e);
    }

    auto rate_at = [&](long horizon) {
        const std::span<const FeedbackEvent> ev(events.data(), static_cast<std::size_t>(horizon));
        const auto [g, cand_total] = hindsight_best_constant(m, ev);
        (void)g;
        const double alg_total = std::accumulate(
            alg_losses.begin(), alg_losses.begin() + horizon, 0.0);
        return (alg_total - cand_total) / static_cast<double>(horizon);
    };

    CHECK(rate_at(2000) < rate_at(1000));
    CHECK(rate_at(4000) < rate_at(2000));
}

TEST_CASE("path length sums absolute increments") {
    CHECK(path_length(std::vector<double>{5.0}) == 0.0);
    CHECK(path_length(std::vector<double>{3.0, 3.0, 3.0}) == 0.0);
    CHECK(path_length(std::vector<double>{0.0, 10.0}) == 10.0);
    const std::vector<double> mono{1.0, 2.0, 4.0, 7.0};
    CHECK(path_length(mono) == doctest::Approx(6.0));
}

TEST_CASE("step response of a perfect tracker settles immediately") {
    std::vector<double> truth(200, 0.0);
    for (std::size_t i = 100; i < truth.size(); ++i) {
        truth[i] = 10.0;
    }
    const auto sr = step_response(truth, truth, 100, 1.0, 50);
    REQUIRE(sr.settling_slots.has_value());
    CHECK(*sr.settling_slots == 0);
    CHECK(sr.overshoot_db == 0.0);
}

TEST_CASE("a frozen estimate never settles") {
    std::vector<double> truth(200, 0.0);
    for (std::size_t i = 100; i < truth.size(); ++i) {
        truth[i] = 10.0;
    }
    const std::vector<double> frozen(200, 0.0);
    const auto sr = step_response(frozen, truth, 100, 1.0, 50);
    CHECK(!sr.settling_slots.has_value());
}

TEST_CASE("overshoot measures the excursion past the post-step level") {
    std::vector<double> truth(10, 0.0);
    for (std::size_t i = 5; i < truth.size(); ++i) {
        truth[i] = 10.0;
    }
    std::vector<double> est(10, 0.0);
    est[6] = 11.5;
    est[7] = 10.2;
    for (std::size_t i = 8; i < est.size(); ++i) {
        est[i] = 10.0;
    }
    const auto sr = step_response(est, truth, 5, 1.0, 2);
    CHECK(sr.overshoot_db == doctest::Approx(1.5));
}

TEST_CASE("OGD approaches a +10 dB step without the momentum overshoot") {
    const auto model = SigmoidLinkModel::linear_default();
    const auto map = CqiMap::linear_default();
    SinrTraceSpec spec;
    spec.kind = StepChangesSpec{{0.0, 10.0}, {1000}};
    spec.length = 2000;

    using Method = SingleExpertEstimator::Method;
    auto overshoot = [&](Method method, double momentum, std::uint64_t seed) {
        LinkSimConfig sim{model, model, map,   1000,           1000, 5,
                          std::nullopt, 10, CqiNoise::None, false, seed};
        spec.seed = seed;
        const auto trace = gen_trace(spec);
        SingleExpertEstimator driver(Method::Full, salad_preset(), model, map, 0.0);
        McsPolicy policy;
        policy.bler_target = 0.1;
        policy.target_gain = 0.0;
        policy.driver = PolicyDriver::Truth;
        const auto dataset = run_closed_loop(sim, trace, driver, policy);

        EstimatorParams p;
        p.stepsize = 1.0;
        p.momentum = momentum;
        SingleExpertEstimator est(method, p, model, map, 0.0);
        const auto estimates = run_open_loop(dataset, sim, est);
        return step_response(estimates, trace, 1000, 2.0, 50, 60).overshoot_db;
    };

    std::vector<double> ogd, hb;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ogd.push_back(overshoot(Method::Ogd, 0.0, seed));
        hb.push_back(overshoot(Method::Hb, 0.6, seed));
    }
    std::sort(ogd.begin(), ogd.end());
    std::sort(hb.begin(), hb.end());
    CHECK(ogd[2] < 1.0);
    CHECK(ogd[2] < 0.5 * hb[2]);
}

TEST_CASE("spectral efficiency weights ACKed slots by the MCS rate") {
    TraceDataset ds;
    ds.records.push_back({0, 0.0, 4, 1000, 0, {}, 0.0});  // rate 1.0
    ds.records.push_back({1, 0.0, 9, 1000, 1, {}, 0.0});  // NACK: no rate
    ds.records.push_back({2, 0.0, 9, 1000, 0, {}, 0.0});  // rate 2.0
    CHECK(spectral_efficiency(ds) == doctest::Approx(1.0));
    CHECK(spectral_efficiency(TraceDataset{}) == 0.0);
}
