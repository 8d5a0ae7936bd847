// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sinrtrack/config.hpp"
#include "sinrtrack/dataset_io.hpp"
#include "sinrtrack/scenario.hpp"

using namespace sinrtrack;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path p = fs::temp_directory_path() / "sinrtrack_tests";
    fs::create_directories(p);
    return p;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* tiny_experiment = R"({
  "name": "smoke",
  "sim": {"feedback_delay": 2, "cqi_period": 5, "cqi_noise": "pm1"},
  "traces": [{"kind": "random_walk", "start_db": 10.0, "step_std_db": 0.2, "length": 200}],
  "seeds": {"base": 1, "count": 2},
  "generators": [
    {"name": "olla_d1",
     "estimator": {"type": "olla", "step_db": 1.0, "bler_target": 0.1},
     "policy": {"bler_target": 0.1, "target_gain": 0.0}}
  ],
  "evaluators": [
    {"name": "salad", "role": "expert", "estimator": {"type": "salad"}}
  ],
  "outputs": {"datasets": true, "warmup_slots": 20}
})";

}  // namespace

TEST_CASE("a well-formed experiment config loads and validates cleanly") {
    const auto path = write_file("good.json", tiny_experiment);
    const auto cfg = load_experiment_config(path.string());
    CHECK(cfg.name == "smoke");
    CHECK(cfg.sim.feedback_delay == 2);
    CHECK(cfg.sim.cqi_noise == CqiNoise::PlusMinusOne);
    CHECK(cfg.generators.size() == 1);
    CHECK(cfg.evaluators.size() == 1);
    CHECK(validate_experiment_config(cfg, path.string()).empty());
}

TEST_CASE("out-of-range parameters are reported with their key") {
    std::string bad = tiny_experiment;
    const auto pos = bad.find("\"type\": \"salad\"");
    bad.replace(pos, 15, "\"type\": \"single\", \"cqi_weight\": 1.5");
    const auto path = write_file("bad_alpha.json", bad);
    const auto cfg = load_experiment_config(path.string());
    const auto violations = validate_experiment_config(cfg, path.string());
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("evaluators[0].estimator.cqi_weight") != std::string::npos) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("a non-monotone CQI table is rejected") {
    std::string bad = tiny_experiment;
    bad.insert(bad.find("\"sim\""), R"("cqi_map": {"table_db": [1,2,3,4,5,6,7,8,9,10,11,12,13,13,15]},
  )");
    const auto path = write_file("bad_cqi.json", bad);
    const auto cfg = load_experiment_config(path.string());
    const auto violations = validate_experiment_config(cfg, path.string());
    REQUIRE(!violations.empty());
    CHECK(violations[0].find("cqi_map") != std::string::npos);
}

TEST_CASE("parse errors carry the offending line") {
    const auto path = write_file("broken.json", "{\n  \"name\": \"x\",\n  oops\n}\n");
    try {
        (void)load_experiment_config(path.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
}

TEST_CASE("unknown keys are flagged") {
    std::string bad = tiny_experiment;
    bad.insert(bad.find("\"sim\""), "\"typo_key\": 1,\n  ");
    const auto path = write_file("unknown_key.json", bad);
    CHECK_THROWS_AS((void)load_experiment_config(path.string()), ConfigError);
}

TEST_CASE("experiment runs are byte-for-byte reproducible") {
    const auto path = write_file("smoke.json", tiny_experiment);
    const auto cfg = load_experiment_config(path.string());

    const fs::path out_a = scratch_dir() / "run_a";
    const fs::path out_b = scratch_dir() / "run_b";
    fs::remove_all(out_a);
    fs::remove_all(out_b);
    run_experiment(cfg, out_a.string(), 1);
    run_experiment(cfg, out_b.string(), 2);  // job count must not matter

    for (const char* rel : {"per_ue.csv", "summary.csv", "datasets/olla_d1/ue0.csv",
                            "datasets/olla_d1/ue1.csv"}) {
        CHECK(slurp(out_a / rel) == slurp(out_b / rel));
        CHECK(!slurp(out_a / rel).empty());
    }
}

TEST_CASE("dataset files round-trip exactly") {
    const auto path = write_file("smoke2.json", tiny_experiment);
    const auto cfg = load_experiment_config(path.string());
    const fs::path out = scratch_dir() / "roundtrip";
    fs::remove_all(out);
    run_experiment(cfg, out.string(), 1);

    const fs::path ds_path = out / "datasets/olla_d1/ue0.csv";
    const TraceDataset ds = read_dataset_file(ds_path.string());
    std::ostringstream rewritten;
    write_dataset_csv(rewritten, ds);
    CHECK(rewritten.str() == slurp(ds_path));
    CHECK(ds.records.size() == 200);
    CHECK(ds.has_truth());
}

TEST_CASE("malformed dataset records name the offending line") {
    const auto path = write_file("bad_dataset.csv",
                                 std::string(dataset_header) + "\n0,1.0,3,1000,0,,4.0\n"
                                                               "1,1.0,3,1000,7,,4.0\n");
    try {
        (void)read_dataset_file(path.string());
        FAIL("expected DatasetFormatError");
    } catch (const DatasetFormatError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
}

TEST_CASE("an empty dataset after the header replays to empty output") {
    const auto path = write_file("empty_dataset.csv", std::string(dataset_header) + "\n");
    const TraceDataset ds = read_dataset_file(path.string());
    CHECK(ds.records.empty());

    ReplayConfig rc;
    const auto outcome = replay_dataset(ds, rc);
    CHECK(outcome.estimates.empty());
    CHECK(!outcome.rmse_full.has_value());
}

TEST_CASE("datasets without ground truth yield estimates but no RMSE") {
    const auto path = write_file("no_truth.csv", std::string(dataset_header) +
                                                     "\n0,,3,1000,0,,\n1,,3,1000,1,,\n");
    const TraceDataset ds = read_dataset_file(path.string());
    CHECK(!ds.has_truth());

    ReplayConfig rc;
    rc.feedback_delay = 1;
    const auto outcome = replay_dataset(ds, rc);
    CHECK(outcome.estimates.size() == 2);
    CHECK(!outcome.rmse_full.has_value());
    CHECK(!outcome.rmse_warm.has_value());
}

TEST_CASE("weight dumps carry one row per consumed event") {
    std::string cfg_text = tiny_experiment;
    const auto gen_pos = cfg_text.find("\"type\": \"olla\"");
    cfg_text.replace(gen_pos, 14,
                     "\"type\": \"fixed_share\", \"stepsize_grid\": [0.5, 1.0], "
                     "\"momentum_grid\": [0.0, 0.3]");
    cfg_text.replace(cfg_text.find("\"datasets\": true"), 16,
                     "\"datasets\": true, \"weights\": true");
    const auto path = write_file("weights.json", cfg_text);
    const auto cfg = load_experiment_config(path.string());
    REQUIRE(validate_experiment_config(cfg, path.string()).empty());

    const fs::path out = scratch_dir() / "weights_run";
    fs::remove_all(out);
    run_experiment(cfg, out.string(), 1);
    const auto lines = slurp(out / "datasets/olla_d1/ue0_weights.csv");
    const auto first_nl = lines.find('\n');
    CHECK(lines.substr(0, first_nl) == "w0,w1,w2,w3");
    // 200 slots at delay 2: 198 consumed events plus the header
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 199);
}

TEST_CASE("replay config estimator kinds construct") {
    const auto path = write_file("replay.json", R"({
      "est_cbs": 1000,
      "feedback_delay": 5,
      "estimator": {"type": "fixed_share",
                    "stepsize_grid": [0.5, 1.0, 2.0, 3.0],
                    "momentum_grid": [0.0, 0.15, 0.3],
                    "learning_rate": 1.0, "share_rate": 0.001},
      "warmup_slots": 100
    })");
    const auto rc = load_replay_config(path.string());
    CHECK(rc.estimator.kind == EstimatorConfig::Kind::FixedShare);
    CHECK(rc.estimator.stepsize_grid.size() == 4);
    const auto est = make_estimator(rc.estimator, rc.link.build(), rc.cqi_map.build(), rc.init_db);
    CHECK(est->predict() == 0.0);
}
