// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <span>
#include <thread>

#include "sinrtrack/dataset_io.hpp"
#include "sinrtrack/rng.hpp"

namespace sinrtrack {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t generator_salt = 0x4c41000;

void parallel_for(long count, int jobs, const std::function<void(long)>& body) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (long i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> workers;
    const int n_workers = static_cast<int>(std::min<long>(jobs, count));
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const long i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                body(i);
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
}

CellMetrics compute_cell(std::span<const double> estimates, std::span<const double> truth,
                         long warmup, const std::optional<StepResponseConfig>& sr) {
    CellMetrics cell;
    const long n = static_cast<long>(estimates.size());
    const long skip = std::clamp(warmup, 0L, n - 1);
    cell.rmse_full = rmse(estimates, truth);
    cell.rmse_warm = rmse(estimates.subspan(static_cast<std::size_t>(skip)),
                          truth.subspan(static_cast<std::size_t>(skip)));
    if (sr && sr->step_slot >= 1 && sr->step_slot < n) {
        cell.step = step_response(estimates, truth, sr->step_slot, sr->band_db, sr->hold_slots,
                                  sr->overshoot_window);
    }
    return cell;
}

std::string settling_str(const std::optional<StepResponse>& sr) {
    if (!sr || !sr->settling_slots) {
        return "inf";
    }
    return std::to_string(*sr->settling_slots);
}

double settling_value(const StepResponse& sr) {
    return sr.settling_slots ? static_cast<double>(*sr.settling_slots)
                             : std::numeric_limits<double>::infinity();
}

std::string format_inf(double v) {
    return std::isinf(v) ? std::string("inf") : format_double(v);
}

void write_weight_log(const std::string& path, const std::vector<std::vector<double>>& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    if (log.empty()) {
        return;
    }
    for (std::size_t n = 0; n < log.front().size(); ++n) {
        out << (n == 0 ? "" : ",") << 'w' << n;
    }
    out << '\n';
    for (const auto& row : log) {
        for (std::size_t n = 0; n < row.size(); ++n) {
            out << (n == 0 ? "" : ",") << format_double(row[n]);
        }
        out << '\n';
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                int jobs) {
    if (cfg.traces.empty() || cfg.generators.empty()) {
        throw ConfigError("experiment needs at least one trace spec and one generator");
    }

    const SigmoidLinkModel true_model = cfg.link.build();
    const SigmoidLinkModel est_model = cfg.est_link_or_default().build();
    const CqiMap cqi_map = cfg.cqi_map.build();

    fs::create_directories(out_dir);

    const long n_ue = cfg.num_seeds;
    const std::size_t n_gen = cfg.generators.size();

    // UE traces are shared by all generators; specs cycle across seeds.
    std::vector<std::vector<double>> traces(static_cast<std::size_t>(n_ue));
    std::vector<std::uint64_t> ue_seeds(static_cast<std::size_t>(n_ue));
    for (long ue = 0; ue < n_ue; ++ue) {
        SinrTraceSpec spec = cfg.traces[static_cast<std::size_t>(ue) % cfg.traces.size()];
        ue_seeds[static_cast<std::size_t>(ue)] = cfg.seed_base + static_cast<std::uint64_t>(ue);
        spec.seed = ue_seeds[static_cast<std::size_t>(ue)];
        traces[static_cast<std::size_t>(ue)] = gen_trace(spec);
    }

    ExperimentResult result;
    result.metrics.assign(n_gen, std::vector<UeMetrics>(static_cast<std::size_t>(n_ue)));

    if (cfg.outputs.datasets || cfg.outputs.weights) {
        for (const auto& gen : cfg.generators) {
            fs::create_directories(fs::path(out_dir) / "datasets" / gen.name);
        }
    }

    parallel_for(static_cast<long>(n_gen) * n_ue, jobs, [&](long flat) {
        const std::size_t gi = static_cast<std::size_t>(flat / n_ue);
        const std::size_t ue = static_cast<std::size_t>(flat % n_ue);
        const GeneratorConfig& gen = cfg.generators[gi];

        LinkSimConfig sim{true_model,
                          est_model,
                          cqi_map,
                          cfg.sim.true_cbs,
                          cfg.sim.est_cbs,
                          cfg.sim.feedback_delay,
                          cfg.sim.cqi_delay,
                          cfg.sim.cqi_period,
                          cfg.sim.cqi_noise,
                          cfg.sim.cqi_enabled,
                          Rng::derive_seed(ue_seeds[ue], generator_salt + gi)};

        auto estimator = make_estimator(gen.estimator, est_model, cqi_map, cfg.init_db,
                                        cfg.outputs.weights);
        McsPolicy policy;
        policy.bler_target = gen.policy.bler_target;
        policy.explore_prob = gen.policy.explore_prob;
        policy.target_gain = gen.policy.target_gain;
        policy.driver = gen.policy.driver;

        const TraceDataset dataset = run_closed_loop(sim, traces[ue], *estimator, policy);

        UeMetrics& um = result.metrics[gi][ue];
        um.seed = ue_seeds[ue];
        um.self = compute_cell(dataset.estimates(), traces[ue], cfg.outputs.warmup_slots,
                               cfg.outputs.step_response);
        um.se = spectral_efficiency(dataset, cfg.outputs.rate_per_mcs_step);

        um.evaluators.resize(cfg.evaluators.size());
        for (std::size_t ei = 0; ei < cfg.evaluators.size(); ++ei) {
            auto eval = make_estimator(cfg.evaluators[ei].estimator, est_model, cqi_map,
                                       cfg.init_db, false);
            const std::vector<double> estimates = run_open_loop(dataset, sim, *eval);
            um.evaluators[ei] = compute_cell(estimates, traces[ue], cfg.outputs.warmup_slots,
                                             cfg.outputs.step_response);
        }

        if (cfg.outputs.datasets) {
            const fs::path p = fs::path(out_dir) / "datasets" / gen.name /
                               ("ue" + std::to_string(ue) + ".csv");
            write_dataset_file(p.string(), dataset);
        }
        if (cfg.outputs.weights) {
            if (const auto* log = estimator->weight_log()) {
                const fs::path p = fs::path(out_dir) / "datasets" / gen.name /
                                   ("ue" + std::to_string(ue) + "_weights.csv");
                write_weight_log(p.string(), *log);
            }
        }
    });

    // Per-UE table.
    {
        std::ofstream out(fs::path(out_dir) / "per_ue.csv", std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write per_ue.csv under " + out_dir);
        }
        out << "generator,evaluator,ue,seed,rmse,rmse_full,se\n";
        for (std::size_t gi = 0; gi < n_gen; ++gi) {
            for (long ue = 0; ue < n_ue; ++ue) {
                const UeMetrics& um = result.metrics[gi][static_cast<std::size_t>(ue)];
                out << cfg.generators[gi].name << ",self," << ue << ',' << um.seed << ','
                    << format_double(um.self.rmse_warm) << ',' << format_double(um.self.rmse_full)
                    << ',' << format_double(um.se) << '\n';
                for (std::size_t ei = 0; ei < cfg.evaluators.size(); ++ei) {
                    const CellMetrics& cell = um.evaluators[ei];
                    out << cfg.generators[gi].name << ',' << cfg.evaluators[ei].name << ',' << ue
                        << ',' << um.seed << ',' << format_double(cell.rmse_warm) << ','
                        << format_double(cell.rmse_full) << ",\n";
                }
            }
        }
    }

    // Summary percentiles.
    {
        std::ofstream out(fs::path(out_dir) / "summary.csv", std::ios::binary);
        out << "generator,evaluator,n_ue";
        for (double p : cfg.outputs.percentile_ps) {
            out << ",rmse_p" << format_double(p);
        }
        for (double p : cfg.outputs.percentile_ps) {
            out << ",rmse_full_p" << format_double(p);
        }
        out << ",se_p50\n";

        auto emit_row = [&](const std::string& gen, const std::string& eval,
                            std::vector<double> warm, std::vector<double> full,
                            std::optional<double> se_median) {
            out << gen << ',' << eval << ',' << warm.size();
            for (double v : percentiles(warm, cfg.outputs.percentile_ps)) {
                out << ',' << format_double(v);
            }
            for (double v : percentiles(full, cfg.outputs.percentile_ps)) {
                out << ',' << format_double(v);
            }
            out << ',';
            if (se_median) {
                out << format_double(*se_median);
            }
            out << '\n';
        };

        const double p50[] = {50.0};
        for (std::size_t gi = 0; gi < n_gen; ++gi) {
            std::vector<double> warm, full, se;
            for (const auto& um : result.metrics[gi]) {
                warm.push_back(um.self.rmse_warm);
                full.push_back(um.self.rmse_full);
                se.push_back(um.se);
            }
            emit_row(cfg.generators[gi].name, "self", std::move(warm), std::move(full),
                     percentiles(se, p50)[0]);
            for (std::size_t ei = 0; ei < cfg.evaluators.size(); ++ei) {
                std::vector<double> ew, ef;
                for (const auto& um : result.metrics[gi]) {
                    ew.push_back(um.evaluators[ei].rmse_warm);
                    ef.push_back(um.evaluators[ei].rmse_full);
                }
                emit_row(cfg.generators[gi].name, cfg.evaluators[ei].name, std::move(ew),
                         std::move(ef), std::nullopt);
            }
        }
    }

    // Meta-vs-experts ranking, when the roles are present.
    std::vector<std::size_t> meta_idx, expert_idx;
    for (std::size_t ei = 0; ei < cfg.evaluators.size(); ++ei) {
        (cfg.evaluators[ei].role == EvaluatorRole::Meta ? meta_idx : expert_idx).push_back(ei);
    }
    if (!meta_idx.empty() && !expert_idx.empty()) {
        std::ofstream out(fs::path(out_dir) / "ranking.csv", std::ios::binary);
        std::ofstream summary(fs::path(out_dir) / "ranking_summary.csv", std::ios::binary);
        out << "generator,meta,ue,rank_cdf\n";
        summary << "generator,meta,rank_cdf_p50,frac_top20,frac_top30\n";
        const double p50[] = {50.0};
        for (std::size_t gi = 0; gi < n_gen; ++gi) {
            for (std::size_t mi : meta_idx) {
                std::vector<double> cdfs;
                for (long ue = 0; ue < n_ue; ++ue) {
                    const UeMetrics& um = result.metrics[gi][static_cast<std::size_t>(ue)];
                    std::vector<double> expert_rmses;
                    for (std::size_t ei : expert_idx) {
                        expert_rmses.push_back(um.evaluators[ei].rmse_warm);
                    }
                    const double cdf =
                        ranking_cdf(um.evaluators[mi].rmse_warm, expert_rmses);
                    cdfs.push_back(cdf);
                    out << cfg.generators[gi].name << ',' << cfg.evaluators[mi].name << ',' << ue
                        << ',' << format_double(cdf) << '\n';
                }
                const double median = percentiles(cdfs, p50)[0];
                double top20 = 0.0;
                double top30 = 0.0;
                for (double c : cdfs) {
                    top20 += c <= 0.2 ? 1.0 : 0.0;
                    top30 += c <= 0.3 ? 1.0 : 0.0;
                }
                top20 /= static_cast<double>(cdfs.size());
                top30 /= static_cast<double>(cdfs.size());
                summary << cfg.generators[gi].name << ',' << cfg.evaluators[mi].name << ','
                        << format_double(median) << ',' << format_double(top20) << ','
                        << format_double(top30) << '\n';
            }
        }
    }

    // Step-response tables.
    if (cfg.outputs.step_response) {
        std::ofstream out(fs::path(out_dir) / "step_response.csv", std::ios::binary);
        std::ofstream summary(fs::path(out_dir) / "step_response_summary.csv", std::ios::binary);
        out << "generator,evaluator,ue,settling_slots,overshoot_db\n";
        summary << "generator,evaluator,settling_p50,overshoot_p50\n";
        const double p50[] = {50.0};
        for (std::size_t gi = 0; gi < n_gen; ++gi) {
            auto emit = [&](const std::string& eval,
                            const std::function<const CellMetrics&(const UeMetrics&)>& pick) {
                std::vector<double> settlings, overshoots;
                for (long ue = 0; ue < n_ue; ++ue) {
                    const UeMetrics& um = result.metrics[gi][static_cast<std::size_t>(ue)];
                    const CellMetrics& cell = pick(um);
                    if (!cell.step) {
                        continue;
                    }
                    out << cfg.generators[gi].name << ',' << eval << ',' << ue << ','
                        << settling_str(cell.step) << ',' << format_double(cell.step->overshoot_db)
                        << '\n';
                    settlings.push_back(settling_value(*cell.step));
                    overshoots.push_back(cell.step->overshoot_db);
                }
                if (!settlings.empty()) {
                    summary << cfg.generators[gi].name << ',' << eval << ','
                            << format_inf(percentiles(settlings, p50)[0]) << ','
                            << format_double(percentiles(overshoots, p50)[0]) << '\n';
                }
            };
            emit("self", [](const UeMetrics& um) -> const CellMetrics& { return um.self; });
            for (std::size_t ei = 0; ei < cfg.evaluators.size(); ++ei) {
                emit(cfg.evaluators[ei].name,
                     [ei](const UeMetrics& um) -> const CellMetrics& {
                         return um.evaluators[ei];
                     });
            }
        }
    }

    return result;
}

LinkSimConfig replay_sim_config(const ReplayConfig& cfg) {
    const SigmoidLinkModel est_model = cfg.link.build();
    return LinkSimConfig{est_model,
                         est_model,
                         cfg.cqi_map.build(),
                         cfg.est_cbs,
                         cfg.est_cbs,
                         cfg.feedback_delay,
                         cfg.cqi_delay,
                         1,
                         CqiNoise::None,
                         true,
                         0};
}

ReplayOutcome replay_dataset(const TraceDataset& dataset, const ReplayConfig& cfg) {
    const LinkSimConfig sim = replay_sim_config(cfg);
    auto estimator = make_estimator(cfg.estimator, sim.est_model, sim.cqi_map, cfg.init_db);
    ReplayOutcome outcome;
    outcome.estimates = run_open_loop(dataset, sim, *estimator);

    std::vector<double> est_full, truth_full, est_warm, truth_warm;
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        const auto& rec = dataset.records[i];
        if (!rec.true_sinr_db) {
            continue;
        }
        est_full.push_back(outcome.estimates[i]);
        truth_full.push_back(*rec.true_sinr_db);
        if (rec.slot >= cfg.warmup_slots) {
            est_warm.push_back(outcome.estimates[i]);
            truth_warm.push_back(*rec.true_sinr_db);
        }
    }
    if (!est_full.empty()) {
        outcome.rmse_full = rmse(est_full, truth_full);
    }
    if (!est_warm.empty()) {
        outcome.rmse_warm = rmse(est_warm, truth_warm);
    }
    return outcome;
}

}  // namespace sinrtrack
