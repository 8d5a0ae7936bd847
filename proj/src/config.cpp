// SPDX-License-Identifier: Apache-2.0

#include "sinrtrack/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sinrtrack {

using nlohmann::json;

namespace {

// Collects `<file>: <key path>: <problem>` messages while reading.
struct Reader {
    const std::string& file;
    std::vector<std::string> errors;

    void fail(const std::string& key, const std::string& message) {
        errors.push_back(file + ": " + key + ": " + message);
    }

    void check_keys(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
        if (!obj.is_object()) {
            return;
        }
        for (const auto& [key, _] : obj.items()) {
            bool ok = false;
            for (const char* k : known) {
                if (key == k) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                fail(where.empty() ? key : where + "." + key, "unknown key");
            }
        }
    }

    template <typename T>
    void read(const json& obj, const std::string& where, const char* key, T& out) {
        if (!obj.contains(key)) {
            return;
        }
        try {
            out = obj.at(key).get<T>();
        } catch (const json::exception&) {
            fail(where.empty() ? key : where + "." + key, "wrong type");
        }
    }

    void read_interval(const json& obj, const std::string& where, const char* key,
                       Interval& out) {
        if (!obj.contains(key)) {
            return;
        }
        std::vector<double> v;
        read(obj, where, key, v);
        if (v.size() == 2) {
            out = {v[0], v[1]};
        } else if (obj.at(key).is_array()) {
            fail(where + "." + key, "expected [lo, hi]");
        }
    }
};

json parse_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path + ": cannot open");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        long line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
            }
        }
        throw ConfigError(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

template <typename Enum>
struct NamedValue {
    const char* name;
    Enum value;
};

template <typename Enum, std::size_t N>
void read_enum(Reader& r, const json& obj, const std::string& where, const char* key,
               const NamedValue<Enum> (&names)[N], Enum& out) {
    if (!obj.contains(key)) {
        return;
    }
    std::string s;
    r.read(obj, where, key, s);
    for (const auto& nv : names) {
        if (s == nv.name) {
            out = nv.value;
            return;
        }
    }
    std::string allowed;
    for (const auto& nv : names) {
        allowed += allowed.empty() ? nv.name : std::string("|") + nv.name;
    }
    r.fail(where + "." + key, "expected one of " + allowed);
}

constexpr NamedValue<MomentumGate> gate_names[] = {
    {"when_cqi_absent", MomentumGate::WhenCqiAbsent},
    {"when_cqi_present", MomentumGate::WhenCqiPresent},
    {"always", MomentumGate::Always},
};

constexpr NamedValue<ExpertLossKind> loss_names[] = {
    {"threshold", ExpertLossKind::Threshold},
    {"bce", ExpertLossKind::Bce},
};

constexpr NamedValue<CqiNoise> noise_names[] = {
    {"none", CqiNoise::None},
    {"pm1", CqiNoise::PlusMinusOne},
};

constexpr NamedValue<EvaluatorRole> role_names[] = {
    {"expert", EvaluatorRole::Expert},
    {"meta", EvaluatorRole::Meta},
};

constexpr NamedValue<PolicyDriver> driver_names[] = {
    {"estimate", PolicyDriver::Estimate},
    {"truth", PolicyDriver::Truth},
};

constexpr NamedValue<EstimatorConfig::Kind> estimator_kind_names[] = {
    {"single", EstimatorConfig::Kind::Single},
    {"ogd", EstimatorConfig::Kind::Ogd},
    {"hb", EstimatorConfig::Kind::Hb},
    {"nag", EstimatorConfig::Kind::Nag},
    {"salad", EstimatorConfig::Kind::Salad},
    {"fixed_share", EstimatorConfig::Kind::FixedShare},
    {"ftl", EstimatorConfig::Kind::Ftl},
    {"olla", EstimatorConfig::Kind::Olla},
    {"nolla", EstimatorConfig::Kind::Nolla},
    {"lts", EstimatorConfig::Kind::Lts},
};

LinkModelConfig read_link(Reader& r, const json& obj, const std::string& where) {
    LinkModelConfig cfg;
    r.check_keys(obj, where,
                 {"num_mcs", "center0_db", "center_step_db", "scale_db", "curves", "ref_cbs",
                  "cbs_center_shift_db_per_decade", "cbs_scale_exponent", "scale_clip",
                  "bler_clip"});
    r.read(obj, where, "num_mcs", cfg.num_mcs);
    r.read(obj, where, "center0_db", cfg.center0_db);
    r.read(obj, where, "center_step_db", cfg.center_step_db);
    r.read(obj, where, "scale_db", cfg.scale_db);
    r.read(obj, where, "ref_cbs", cfg.ref_cbs);
    r.read(obj, where, "cbs_center_shift_db_per_decade", cfg.cbs_center_shift_db_per_decade);
    r.read(obj, where, "cbs_scale_exponent", cfg.cbs_scale_exponent);
    r.read_interval(obj, where, "scale_clip", cfg.scale_clip);
    r.read_interval(obj, where, "bler_clip", cfg.bler_clip);
    if (obj.contains("curves")) {
        std::vector<std::vector<double>> raw;
        r.read(obj, where, "curves", raw);
        std::vector<McsCurve> curves;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i].size() != 2) {
                r.fail(where + ".curves[" + std::to_string(i) + "]", "expected [center, scale]");
                continue;
            }
            curves.push_back({raw[i][0], raw[i][1]});
        }
        cfg.curves = std::move(curves);
    }
    return cfg;
}

CqiMapConfig read_cqi_map(Reader& r, const json& obj, const std::string& where) {
    CqiMapConfig cfg;
    r.check_keys(obj, where, {"base_db", "step_db", "table_db"});
    r.read(obj, where, "base_db", cfg.base_db);
    r.read(obj, where, "step_db", cfg.step_db);
    if (obj.contains("table_db")) {
        std::vector<double> table;
        r.read(obj, where, "table_db", table);
        cfg.table_db = std::move(table);
    }
    return cfg;
}

SimSectionConfig read_sim(Reader& r, const json& obj, const std::string& where) {
    SimSectionConfig cfg;
    r.check_keys(obj, where,
                 {"true_cbs", "est_cbs", "feedback_delay", "cqi_delay", "cqi_period", "cqi_noise",
                  "cqi_enabled"});
    r.read(obj, where, "true_cbs", cfg.true_cbs);
    r.read(obj, where, "est_cbs", cfg.est_cbs);
    r.read(obj, where, "feedback_delay", cfg.feedback_delay);
    if (obj.contains("cqi_delay")) {
        long d = 0;
        r.read(obj, where, "cqi_delay", d);
        cfg.cqi_delay = d;
    }
    r.read(obj, where, "cqi_period", cfg.cqi_period);
    read_enum(r, obj, where, "cqi_noise", noise_names, cfg.cqi_noise);
    r.read(obj, where, "cqi_enabled", cfg.cqi_enabled);
    return cfg;
}

EstimatorConfig read_estimator(Reader& r, const json& obj, const std::string& where) {
    EstimatorConfig cfg;
    r.check_keys(obj, where,
                 {"type", "cqi_weight", "momentum", "stepsize", "gate", "cqi_weight_grid",
                  "momentum_grid", "stepsize_grid", "learning_rate", "share_rate", "loss",
                  "step_db", "bler_target", "step_floor_db", "decay_rate", "grid_lo_db",
                  "grid_hi_db", "grid_step_db"});
    if (!obj.contains("type")) {
        r.fail(where + ".type", "required");
        return cfg;
    }
    read_enum(r, obj, where, "type", estimator_kind_names, cfg.kind);
    r.read(obj, where, "cqi_weight", cfg.cqi_weight);
    r.read(obj, where, "momentum", cfg.momentum);
    r.read(obj, where, "stepsize", cfg.stepsize);
    read_enum(r, obj, where, "gate", gate_names, cfg.gate);
    r.read(obj, where, "cqi_weight_grid", cfg.cqi_weight_grid);
    r.read(obj, where, "momentum_grid", cfg.momentum_grid);
    r.read(obj, where, "stepsize_grid", cfg.stepsize_grid);
    r.read(obj, where, "learning_rate", cfg.learning_rate);
    r.read(obj, where, "share_rate", cfg.share_rate);
    read_enum(r, obj, where, "loss", loss_names, cfg.loss_kind);
    r.read(obj, where, "step_db", cfg.olla_step_db);
    r.read(obj, where, "bler_target", cfg.olla_bler_target);
    r.read(obj, where, "step_floor_db", cfg.nolla_step_floor_db);
    r.read(obj, where, "decay_rate", cfg.nolla_decay_rate);
    r.read(obj, where, "grid_lo_db", cfg.lts_grid_lo_db);
    r.read(obj, where, "grid_hi_db", cfg.lts_grid_hi_db);
    r.read(obj, where, "grid_step_db", cfg.lts_grid_step_db);
    // Grid defaults collapse to the single-expert values.
    if (cfg.cqi_weight_grid.empty()) {
        cfg.cqi_weight_grid = {cfg.cqi_weight};
    }
    if (cfg.momentum_grid.empty()) {
        cfg.momentum_grid = {cfg.momentum};
    }
    if (cfg.stepsize_grid.empty()) {
        cfg.stepsize_grid = {cfg.stepsize};
    }
    return cfg;
}

PolicyConfig read_policy(Reader& r, const json& obj, const std::string& where) {
    PolicyConfig cfg;
    r.check_keys(obj, where, {"bler_target", "explore_prob", "target_gain", "driver"});
    r.read(obj, where, "bler_target", cfg.bler_target);
    r.read(obj, where, "explore_prob", cfg.explore_prob);
    r.read(obj, where, "target_gain", cfg.target_gain);
    read_enum(r, obj, where, "driver", driver_names, cfg.driver);
    return cfg;
}

SinrTraceSpec read_trace(Reader& r, const json& obj, const std::string& where) {
    SinrTraceSpec spec;
    std::string kind;
    r.read(obj, where, "kind", kind);
    r.read(obj, where, "length", spec.length);

    auto read_segment = [&](const json& seg, const std::string& seg_where,
                            bool allow_regime) -> std::optional<TraceSegment> {
        std::string seg_kind;
        r.read(seg, seg_where, "kind", seg_kind);
        if (seg_kind == "random_walk") {
            RandomWalkSpec s;
            r.read(seg, seg_where, "start_db", s.start_db);
            r.read(seg, seg_where, "step_std_db", s.step_std_db);
            return TraceSegment(s);
        }
        if (seg_kind == "sinusoid") {
            SinusoidSpec s;
            r.read(seg, seg_where, "amplitude_db", s.amplitude_db);
            r.read(seg, seg_where, "period_slots", s.period_slots);
            r.read(seg, seg_where, "offset_db", s.offset_db);
            return TraceSegment(s);
        }
        if (seg_kind == "step_changes") {
            StepChangesSpec s;
            r.read(seg, seg_where, "levels_db", s.levels_db);
            r.read(seg, seg_where, "change_slots", s.change_slots);
            return TraceSegment(s);
        }
        (void)allow_regime;
        r.fail(seg_where + ".kind",
               "expected random_walk|sinusoid|step_changes" +
                   std::string(allow_regime ? "|regime_switch" : ""));
        return std::nullopt;
    };

    if (kind == "regime_switch") {
        RegimeSwitchSpec s;
        r.read(obj, where, "switch_slots", s.switch_slots);
        if (obj.contains("segments") && obj.at("segments").is_array()) {
            const auto& segs = obj.at("segments");
            for (std::size_t i = 0; i < segs.size(); ++i) {
                auto seg = read_segment(segs[i], where + ".segments[" + std::to_string(i) + "]",
                                        false);
                if (seg) {
                    s.segments.push_back(std::move(*seg));
                }
            }
        } else {
            r.fail(where + ".segments", "required array");
        }
        spec.kind = std::move(s);
    } else {
        auto seg = read_segment(obj, where, true);
        if (seg) {
            std::visit([&](auto&& v) { spec.kind = v; }, *seg);
        }
    }
    return spec;
}

OutputsConfig read_outputs(Reader& r, const json& obj, const std::string& where) {
    OutputsConfig cfg;
    r.check_keys(obj, where,
                 {"datasets", "weights", "warmup_slots", "percentiles", "rate_per_mcs_step",
                  "step_response"});
    r.read(obj, where, "datasets", cfg.datasets);
    r.read(obj, where, "weights", cfg.weights);
    r.read(obj, where, "warmup_slots", cfg.warmup_slots);
    r.read(obj, where, "percentiles", cfg.percentile_ps);
    r.read(obj, where, "rate_per_mcs_step", cfg.rate_per_mcs_step);
    if (obj.contains("step_response")) {
        StepResponseConfig sr;
        const auto& sub = obj.at("step_response");
        r.check_keys(sub, where + ".step_response",
                     {"step_slot", "band_db", "hold_slots", "overshoot_window"});
        r.read(sub, where + ".step_response", "step_slot", sr.step_slot);
        r.read(sub, where + ".step_response", "band_db", sr.band_db);
        r.read(sub, where + ".step_response", "hold_slots", sr.hold_slots);
        r.read(sub, where + ".step_response", "overshoot_window", sr.overshoot_window);
        cfg.step_response = sr;
    }
    return cfg;
}

void throw_if_errors(const Reader& r) {
    if (r.errors.empty()) {
        return;
    }
    std::string all;
    for (const auto& e : r.errors) {
        all += e + "\n";
    }
    throw ConfigError(all);
}

}  // namespace

SigmoidLinkModel LinkModelConfig::build() const {
    if (curves) {
        return SigmoidLinkModel(*curves, ref_cbs, cbs_center_shift_db_per_decade,
                                cbs_scale_exponent, scale_clip, bler_clip);
    }
    std::vector<McsCurve> generated;
    generated.reserve(static_cast<std::size_t>(num_mcs));
    for (int u = 0; u < num_mcs; ++u) {
        generated.push_back({center0_db + center_step_db * u, scale_db});
    }
    return SigmoidLinkModel(std::move(generated), ref_cbs, cbs_center_shift_db_per_decade,
                            cbs_scale_exponent, scale_clip, bler_clip);
}

CqiMap CqiMapConfig::build() const {
    if (table_db) {
        return CqiMap(*table_db);
    }
    std::vector<double> table(CqiMap::max_index);
    for (int k = 0; k < CqiMap::max_index; ++k) {
        table[static_cast<std::size_t>(k)] = base_db + step_db * k;
    }
    return CqiMap(std::move(table));
}

ExperimentConfig load_experiment_config(const std::string& path) {
    const json root = parse_json_file(path);
    Reader r{path, {}};
    ExperimentConfig cfg;

    r.check_keys(root, "",
                 {"name", "link", "est_link", "cqi_map", "sim", "traces", "seeds", "init_db",
                  "generators", "evaluators", "outputs"});
    r.read(root, "", "name", cfg.name);
    if (root.contains("link")) {
        cfg.link = read_link(r, root.at("link"), "link");
    }
    if (root.contains("est_link")) {
        cfg.est_link = read_link(r, root.at("est_link"), "est_link");
    }
    if (root.contains("cqi_map")) {
        cfg.cqi_map = read_cqi_map(r, root.at("cqi_map"), "cqi_map");
    }
    if (root.contains("sim")) {
        cfg.sim = read_sim(r, root.at("sim"), "sim");
    }
    if (root.contains("traces") && root.at("traces").is_array()) {
        const auto& traces = root.at("traces");
        for (std::size_t i = 0; i < traces.size(); ++i) {
            cfg.traces.push_back(read_trace(r, traces[i], "traces[" + std::to_string(i) + "]"));
        }
    }
    if (root.contains("seeds")) {
        const auto& seeds = root.at("seeds");
        r.check_keys(seeds, "seeds", {"base", "count"});
        r.read(seeds, "seeds", "base", cfg.seed_base);
        r.read(seeds, "seeds", "count", cfg.num_seeds);
    }
    r.read(root, "", "init_db", cfg.init_db);
    if (root.contains("generators") && root.at("generators").is_array()) {
        const auto& gens = root.at("generators");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::string where = "generators[" + std::to_string(i) + "]";
            GeneratorConfig gen;
            r.check_keys(gens[i], where, {"name", "estimator", "policy"});
            r.read(gens[i], where, "name", gen.name);
            if (gens[i].contains("estimator")) {
                gen.estimator = read_estimator(r, gens[i].at("estimator"), where + ".estimator");
            } else {
                r.fail(where + ".estimator", "required");
            }
            if (gens[i].contains("policy")) {
                gen.policy = read_policy(r, gens[i].at("policy"), where + ".policy");
            }
            cfg.generators.push_back(std::move(gen));
        }
    }
    if (root.contains("evaluators") && root.at("evaluators").is_array()) {
        const auto& evals = root.at("evaluators");
        for (std::size_t i = 0; i < evals.size(); ++i) {
            const std::string where = "evaluators[" + std::to_string(i) + "]";
            EvaluatorConfig ev;
            r.check_keys(evals[i], where, {"name", "role", "estimator"});
            r.read(evals[i], where, "name", ev.name);
            read_enum(r, evals[i], where, "role", role_names, ev.role);
            if (evals[i].contains("estimator")) {
                ev.estimator = read_estimator(r, evals[i].at("estimator"), where + ".estimator");
            } else {
                r.fail(where + ".estimator", "required");
            }
            cfg.evaluators.push_back(std::move(ev));
        }
    }
    if (root.contains("outputs")) {
        cfg.outputs = read_outputs(r, root.at("outputs"), "outputs");
    }
    throw_if_errors(r);
    return cfg;
}

ReplayConfig load_replay_config(const std::string& path) {
    const json root = parse_json_file(path);
    Reader r{path, {}};
    ReplayConfig cfg;
    r.check_keys(root, "",
                 {"link", "cqi_map", "est_cbs", "feedback_delay", "cqi_delay", "estimator",
                  "init_db", "warmup_slots"});
    if (root.contains("link")) {
        cfg.link = read_link(r, root.at("link"), "link");
    }
    if (root.contains("cqi_map")) {
        cfg.cqi_map = read_cqi_map(r, root.at("cqi_map"), "cqi_map");
    }
    r.read(root, "", "est_cbs", cfg.est_cbs);
    r.read(root, "", "feedback_delay", cfg.feedback_delay);
    if (root.contains("cqi_delay")) {
        long d = 0;
        r.read(root, "", "cqi_delay", d);
        cfg.cqi_delay = d;
    }
    if (root.contains("estimator")) {
        cfg.estimator = read_estimator(r, root.at("estimator"), "estimator");
    } else {
        r.fail("estimator", "required");
    }
    r.read(root, "", "init_db", cfg.init_db);
    r.read(root, "", "warmup_slots", cfg.warmup_slots);
    throw_if_errors(r);
    return cfg;
}

namespace {

void validate_link(const LinkModelConfig& link, const std::string& where,
                   const std::string& path, std::vector<std::string>& out) {
    auto fail = [&](const std::string& key, const std::string& msg) {
        out.push_back(path + ": " + where + "." + key + ": " + msg);
    };
    if (link.num_mcs < 1 && !link.curves) {
        fail("num_mcs", "must be >= 1");
    }
    if (!(link.scale_db > 0.0)) {
        fail("scale_db", "must be > 0");
    }
    if (!(link.ref_cbs > 0.0)) {
        fail("ref_cbs", "must be > 0");
    }
    if (!(link.scale_clip.lo > 0.0) || link.scale_clip.lo > link.scale_clip.hi) {
        fail("scale_clip", "need 0 < lo <= hi");
    }
    if (!(link.bler_clip.lo > 0.0) || !(link.bler_clip.hi < 1.0) ||
        link.bler_clip.lo > link.bler_clip.hi) {
        fail("bler_clip", "need 0 < lo <= hi < 1");
    }
    if (link.curves) {
        for (std::size_t i = 0; i < link.curves->size(); ++i) {
            if (!((*link.curves)[i].scale_db > 0.0)) {
                fail("curves[" + std::to_string(i) + "]", "scale must be > 0");
            }
            if (i > 0 && !((*link.curves)[i].center_db > (*link.curves)[i - 1].center_db)) {
                fail("curves[" + std::to_string(i) + "]",
                     "centers must be strictly increasing in MCS");
            }
        }
        if (link.curves->empty()) {
            fail("curves", "must be non-empty");
        }
    }
    if (link.center_step_db <= 0.0 && !link.curves && link.num_mcs > 1) {
        fail("center_step_db", "must be > 0 for increasing centers");
    }
}

void validate_estimator(const EstimatorConfig& est, const std::string& where,
                        const std::string& path, std::vector<std::string>& out) {
    auto fail = [&](const std::string& key, const std::string& msg) {
        out.push_back(path + ": " + where + "." + key + ": " + msg);
    };
    using Kind = EstimatorConfig::Kind;
    switch (est.kind) {
        case Kind::Single:
        case Kind::Ogd:
        case Kind::Hb:
        case Kind::Nag:
        case Kind::Salad:
            if (est.cqi_weight < 0.0 || est.cqi_weight > 1.0) {
                fail("cqi_weight", "must be in [0, 1]");
            }
            if (est.momentum < 0.0) {
                fail("momentum", "must be >= 0");
            }
            if (est.stepsize < 0.0) {
                fail("stepsize", "must be >= 0");
            }
            break;
        case Kind::FixedShare:
        case Kind::Ftl:
            if (est.cqi_weight_grid.empty() || est.momentum_grid.empty() ||
                est.stepsize_grid.empty()) {
                fail("stepsize_grid", "parameter grids must be non-empty");
            }
            for (double a : est.cqi_weight_grid) {
                if (a < 0.0 || a > 1.0) {
                    fail("cqi_weight_grid", "entries must be in [0, 1]");
                    break;
                }
            }
            for (double b : est.momentum_grid) {
                if (b < 0.0) {
                    fail("momentum_grid", "entries must be >= 0");
                    break;
                }
            }
            for (double e : est.stepsize_grid) {
                if (e < 0.0) {
                    fail("stepsize_grid", "entries must be >= 0");
                    break;
                }
            }
            if (!(est.learning_rate > 0.0)) {
                fail("learning_rate", "must be > 0");
            }
            if (est.share_rate < 0.0 || est.share_rate > 1.0) {
                fail("share_rate", "must be in [0, 1]");
            }
            break;
        case Kind::Olla:
        case Kind::Nolla:
            if (!(est.olla_step_db > 0.0)) {
                fail("step_db", "must be > 0");
            }
            if (!(est.olla_bler_target > 0.0) || !(est.olla_bler_target < 1.0)) {
                fail("bler_target", "must be in (0, 1)");
            }
            if (est.kind == Kind::Nolla) {
                if (!(est.nolla_step_floor_db > 0.0)) {
                    fail("step_floor_db", "must be > 0");
                }
                if (!(est.nolla_decay_rate > 0.0)) {
                    fail("decay_rate", "must be > 0");
                }
            }
            break;
        case Kind::Lts:
            if (!(est.lts_grid_hi_db > est.lts_grid_lo_db)) {
                fail("grid_hi_db", "must exceed grid_lo_db");
            }
            if (!(est.lts_grid_step_db > 0.0)) {
                fail("grid_step_db", "must be > 0");
            }
            break;
    }
}

void validate_trace(const SinrTraceSpec& spec, const std::string& where, const std::string& path,
                    std::vector<std::string>& out) {
    auto fail = [&](const std::string& key, const std::string& msg) {
        out.push_back(path + ": " + where + "." + key + ": " + msg);
    };
    if (spec.length < 1) {
        fail("length", "must be >= 1");
        return;
    }
    SinrTraceSpec probe = spec;  // gen_trace validates marks/levels
    probe.length = spec.length;
    try {
        if (std::holds_alternative<RandomWalkSpec>(probe.kind) ||
            std::holds_alternative<SinusoidSpec>(probe.kind)) {
            probe.length = 1;  // cheap structural probe
        }
        (void)gen_trace(probe);
    } catch (const std::exception& e) {
        fail("kind", e.what());
    }
}

}  // namespace

std::vector<std::string> validate_experiment_config(const ExperimentConfig& cfg,
                                                    const std::string& path) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& key, const std::string& msg) {
        out.push_back(path + ": " + key + ": " + msg);
    };

    validate_link(cfg.link, "link", path, out);
    if (cfg.est_link) {
        validate_link(*cfg.est_link, "est_link", path, out);
    }

    // CQI table monotone (the builder applies the same rule).
    try {
        (void)cfg.cqi_map.build();
    } catch (const std::exception& e) {
        fail("cqi_map", e.what());
    }

    if (cfg.sim.true_cbs < 1) {
        fail("sim.true_cbs", "must be >= 1");
    }
    if (cfg.sim.est_cbs < 1) {
        fail("sim.est_cbs", "must be >= 1");
    }
    if (cfg.sim.feedback_delay < 0) {
        fail("sim.feedback_delay", "must be >= 0");
    }
    if (cfg.sim.cqi_delay && *cfg.sim.cqi_delay < 0) {
        fail("sim.cqi_delay", "must be >= 0");
    }
    if (cfg.sim.cqi_period < 1) {
        fail("sim.cqi_period", "must be >= 1");
    }

    if (cfg.traces.empty()) {
        fail("traces", "must be non-empty");
    }
    for (std::size_t i = 0; i < cfg.traces.size(); ++i) {
        validate_trace(cfg.traces[i], "traces[" + std::to_string(i) + "]", path, out);
    }

    if (cfg.num_seeds < 1) {
        fail("seeds.count", "must be >= 1");
    }

    if (cfg.generators.empty()) {
        fail("generators", "must be non-empty");
    }
    for (std::size_t i = 0; i < cfg.generators.size(); ++i) {
        const std::string where = "generators[" + std::to_string(i) + "]";
        if (cfg.generators[i].name.empty()) {
            fail(where + ".name", "required");
        }
        validate_estimator(cfg.generators[i].estimator, where + ".estimator", path, out);
        const auto& pol = cfg.generators[i].policy;
        if (pol.bler_target < 0.0 || pol.bler_target > 1.0) {
            fail(where + ".policy.bler_target", "must be in [0, 1]");
        }
        if (pol.explore_prob < 0.0 || pol.explore_prob > 1.0) {
            fail(where + ".policy.explore_prob", "must be in [0, 1]");
        }
        if (pol.target_gain < 0.0) {
            fail(where + ".policy.target_gain", "must be >= 0");
        }
    }
    for (std::size_t i = 0; i < cfg.evaluators.size(); ++i) {
        const std::string where = "evaluators[" + std::to_string(i) + "]";
        if (cfg.evaluators[i].name.empty()) {
            fail(where + ".name", "required");
        }
        validate_estimator(cfg.evaluators[i].estimator, where + ".estimator", path, out);
    }

    if (cfg.outputs.warmup_slots < 0) {
        fail("outputs.warmup_slots", "must be >= 0");
    }
    for (double p : cfg.outputs.percentile_ps) {
        if (p < 0.0 || p > 100.0) {
            fail("outputs.percentiles", "entries must be in [0, 100]");
            break;
        }
    }
    if (cfg.outputs.step_response) {
        if (cfg.outputs.step_response->step_slot < 1) {
            fail("outputs.step_response.step_slot", "must be >= 1");
        }
        if (!(cfg.outputs.step_response->band_db > 0.0)) {
            fail("outputs.step_response.band_db", "must be > 0");
        }
        if (cfg.outputs.step_response->hold_slots < 1) {
            fail("outputs.step_response.hold_slots", "must be >= 1");
        }
    }
    return out;
}

std::vector<std::string> validate_replay_config(const ReplayConfig& cfg,
                                                const std::string& path) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& key, const std::string& msg) {
        out.push_back(path + ": " + key + ": " + msg);
    };
    validate_link(cfg.link, "link", path, out);
    try {
        (void)cfg.cqi_map.build();
    } catch (const std::exception& e) {
        fail("cqi_map", e.what());
    }
    if (cfg.est_cbs < 1) {
        fail("est_cbs", "must be >= 1");
    }
    if (cfg.feedback_delay < 0) {
        fail("feedback_delay", "must be >= 0");
    }
    if (cfg.cqi_delay && *cfg.cqi_delay < 0) {
        fail("cqi_delay", "must be >= 0");
    }
    if (cfg.warmup_slots < 0) {
        fail("warmup_slots", "must be >= 0");
    }
    validate_estimator(cfg.estimator, "estimator", path, out);
    return out;
}

bool is_replay_config_file(const std::string& path) {
    const json root = parse_json_file(path);
    return root.is_object() && root.contains("estimator");
}

std::unique_ptr<SinrEstimator> make_estimator(const EstimatorConfig& cfg,
                                              const SigmoidLinkModel& est_model,
                                              const CqiMap& cqi_map, double init_db,
                                              bool record_weights) {
    using Kind = EstimatorConfig::Kind;
    using Method = SingleExpertEstimator::Method;

    auto single = [&](Method method, const EstimatorParams& params) {
        return std::make_unique<SingleExpertEstimator>(method, params, est_model, cqi_map,
                                                       init_db);
    };

    switch (cfg.kind) {
        case Kind::Single: {
            EstimatorParams params;
            params.cqi_weight = cfg.cqi_weight;
            params.momentum = cfg.momentum;
            params.stepsize = cfg.stepsize;
            params.gate = cfg.gate;
            return single(Method::Full, params);
        }
        case Kind::Ogd: {
            EstimatorParams params;
            params.stepsize = cfg.stepsize;
            return single(Method::Ogd, params);
        }
        case Kind::Hb: {
            EstimatorParams params;
            params.stepsize = cfg.stepsize;
            params.momentum = cfg.momentum;
            return single(Method::Hb, params);
        }
        case Kind::Nag: {
            EstimatorParams params;
            params.stepsize = cfg.stepsize;
            params.momentum = cfg.momentum;
            return single(Method::Nag, params);
        }
        case Kind::Salad: return single(Method::Full, salad_preset());
        case Kind::FixedShare:
        case Kind::Ftl: {
            ExpertEnsemble ensemble = make_grid_ensemble(
                cfg.cqi_weight_grid, cfg.momentum_grid, cfg.stepsize_grid, cfg.gate,
                cfg.learning_rate, cfg.share_rate, cfg.loss_kind, init_db);
            if (cfg.kind == Kind::FixedShare) {
                return std::make_unique<FixedShareEstimator>(std::move(ensemble), est_model,
                                                             cqi_map, record_weights);
            }
            return std::make_unique<FtlEstimator>(std::move(ensemble), est_model, cqi_map);
        }
        case Kind::Olla:
        case Kind::Nolla: {
            OllaState state;
            state.estimate_db = init_db;
            state.step_db = cfg.olla_step_db;
            state.bler_target = cfg.olla_bler_target;
            if (cfg.kind == Kind::Nolla) {
                state.decay = NollaDecay{cfg.nolla_step_floor_db, cfg.nolla_decay_rate};
            }
            return std::make_unique<OllaEstimator>(state);
        }
        case Kind::Lts: {
            LtsState state =
                LtsState::uniform(cfg.lts_grid_lo_db, cfg.lts_grid_hi_db, cfg.lts_grid_step_db);
            return std::make_unique<LtsEstimator>(std::move(state), est_model);
        }
    }
    throw std::logic_error("unhandled estimator kind");
}

}  // namespace sinrtrack
