#!/usr/bin/env python3
"""One-off generator for the shipped scenario configs (dev tool, not shipped)."""
import json
import pathlib

OUT = pathlib.Path("configs")
OUT.mkdir(exist_ok=True)


def dump(name, cfg):
    (OUT / f"{name}.json").write_text(json.dumps(cfg, indent=2) + "\n")


def single(alpha=0.0, beta=0.0, eta=1.0):
    est = {"type": "single", "cqi_weight": alpha, "momentum": beta, "stepsize": eta}
    return est


def fs(alphas, betas, etas, mu, eps=1.0):
    return {
        "type": "fixed_share",
        "cqi_weight_grid": alphas,
        "momentum_grid": betas,
        "stepsize_grid": etas,
        "learning_rate": eps,
        "share_rate": mu,
    }


def ftl(alphas, betas, etas):
    return {
        "type": "ftl",
        "cqi_weight_grid": alphas,
        "momentum_grid": betas,
        "stepsize_grid": etas,
        "learning_rate": 1.0,
        "share_rate": 0.0,
    }


policy_target = {"bler_target": 0.1, "explore_prob": 0.0, "target_gain": 0.02}
policy_fixed_tau = {"bler_target": 0.1, "explore_prob": 0.0, "target_gain": 0.0}

# ---------------------------------------------------------------- fig1
dump(
    "fig1-momentum",
    {
        "name": "fig1-momentum",
        "sim": {"feedback_delay": 5, "cqi_enabled": False},
        "traces": [
            {"kind": "step_changes", "levels_db": [0.0, 10.0], "change_slots": [1000],
             "length": 2000}
        ],
        "seeds": {"base": 1, "count": 20},
        "init_db": 0.0,
        "generators": [
            {"name": "ogd", "estimator": {"type": "ogd", "stepsize": 1.0},
             "policy": {"bler_target": 0.5, "explore_prob": 0.0, "target_gain": 0.0}},
            {"name": "nag_b03",
             "estimator": {"type": "nag", "stepsize": 1.0, "momentum": 0.3},
             "policy": {"bler_target": 0.5, "explore_prob": 0.0, "target_gain": 0.0}},
            {"name": "nag_b06",
             "estimator": {"type": "nag", "stepsize": 1.0, "momentum": 0.6},
             "policy": {"bler_target": 0.5, "explore_prob": 0.0, "target_gain": 0.0}},
            {"name": "hb_b06",
             "estimator": {"type": "hb", "stepsize": 1.0, "momentum": 0.6},
             "policy": {"bler_target": 0.5, "explore_prob": 0.0, "target_gain": 0.0}},
        ],
        "evaluators": [],
        "outputs": {
            "datasets": False,
            "warmup_slots": 100,
            "percentiles": [20, 50, 80],
            "step_response": {"step_slot": 1000, "band_db": 1.0, "hold_slots": 50},
        },
    },
)

# ---------------------------------------------------------------- table1
mixed_traces = [
    {"kind": "random_walk", "start_db": 10.0, "step_std_db": 0.1, "length": 3000},
    {"kind": "random_walk", "start_db": 15.0, "step_std_db": 0.3, "length": 3000},
    {"kind": "step_changes", "levels_db": [5.0, 15.0, 8.0], "change_slots": [1000, 2000],
     "length": 3000},
    {"kind": "random_walk", "start_db": 8.0, "step_std_db": 0.2, "length": 3000},
    {"kind": "step_changes", "levels_db": [12.0, 4.0], "change_slots": [1500], "length": 3000},
]

table1_grids = dict(alphas=[0.0], betas=[0.0, 0.15, 0.3], etas=[0.5, 1.0, 2.0, 3.0])

dump(
    "table1-replay",
    {
        "name": "table1-replay",
        "sim": {"feedback_delay": 5, "cqi_enabled": False},
        "traces": mixed_traces,
        "seeds": {"base": 1, "count": 50},
        "init_db": 0.0,
        "generators": [
            {"name": "olla_d2", "estimator": {"type": "olla", "step_db": 2.0,
                                              "bler_target": 0.1},
             "policy": policy_fixed_tau},
            {"name": "olla_d1", "estimator": {"type": "olla", "step_db": 1.0,
                                              "bler_target": 0.1},
             "policy": policy_fixed_tau},
            {"name": "nolla_d2", "estimator": {"type": "nolla", "step_db": 2.0,
                                               "bler_target": 0.1, "step_floor_db": 0.1,
                                               "decay_rate": 0.002},
             "policy": policy_fixed_tau},
            {"name": "nolla_d1", "estimator": {"type": "nolla", "step_db": 1.0,
                                               "bler_target": 0.1, "step_floor_db": 0.1,
                                               "decay_rate": 0.002},
             "policy": policy_fixed_tau},
            {"name": "lts", "estimator": {"type": "lts", "grid_lo_db": -20.0,
                                          "grid_hi_db": 40.0, "grid_step_db": 0.25},
             "policy": policy_fixed_tau},
            {"name": "salad_gen", "estimator": {"type": "salad"}, "policy": policy_fixed_tau},
        ],
        "evaluators": [
            {"name": "fs12", "role": "meta",
             "estimator": fs(table1_grids["alphas"], table1_grids["betas"],
                             table1_grids["etas"], 1e-3)},
            {"name": "salad", "role": "expert", "estimator": {"type": "salad"}},
        ],
        "outputs": {"datasets": False, "warmup_slots": 100, "percentiles": [20, 50, 80]},
    },
)

# ---------------------------------------------------------------- fig2
fig2_alphas = [0.0, 0.1, 1.0]
fig2_betas = [0.0, 0.2, 0.4, 0.6]
fig2_etas = [0.2, 1.0, 1.8, 2.6]

experts = []
for a in fig2_alphas:
    for b in fig2_betas:
        for e in fig2_etas:
            experts.append(
                {"name": f"s_a{a:g}_b{b:g}_e{e:g}", "role": "expert",
                 "estimator": single(a, b, e)}
            )

regime_traces = [
    {"kind": "regime_switch", "length": 3000, "switch_slots": [1500],
     "segments": [{"kind": "random_walk", "start_db": 12.0, "step_std_db": 0.35},
                  {"kind": "random_walk", "start_db": 12.0, "step_std_db": 0.05}]},
    {"kind": "regime_switch", "length": 3000, "switch_slots": [1500],
     "segments": [{"kind": "sinusoid", "amplitude_db": 6.0, "period_slots": 250.0,
                   "offset_db": 10.0},
                  {"kind": "random_walk", "start_db": 6.0, "step_std_db": 0.1}]},
    {"kind": "regime_switch", "length": 3000, "switch_slots": [1500],
     "segments": [{"kind": "random_walk", "start_db": 8.0, "step_std_db": 0.05},
                  {"kind": "sinusoid", "amplitude_db": 5.0, "period_slots": 200.0,
                   "offset_db": 12.0}]},
    {"kind": "regime_switch", "length": 3000, "switch_slots": [1500],
     "segments": [{"kind": "step_changes", "levels_db": [4.0, 16.0], "change_slots": [700]},
                  {"kind": "random_walk", "start_db": 10.0, "step_std_db": 0.2}]},
]

dump(
    "fig2-selftuning",
    {
        "name": "fig2-selftuning",
        "sim": {"feedback_delay": 5, "cqi_period": 10, "cqi_noise": "pm1",
                "cqi_enabled": True},
        "traces": regime_traces,
        "seeds": {"base": 1, "count": 50},
        "init_db": 0.0,
        "generators": [
            {"name": "fs48_gen",
             "estimator": fs(fig2_alphas, fig2_betas, fig2_etas, 5e-4),
             "policy": policy_target},
        ],
        "evaluators": [
            {"name": "fs48", "role": "meta",
             "estimator": fs(fig2_alphas, fig2_betas, fig2_etas, 5e-4)},
            {"name": "ftl48", "role": "meta",
             "estimator": ftl(fig2_alphas, fig2_betas, fig2_etas)},
        ] + experts,
        "outputs": {"datasets": False, "warmup_slots": 100, "percentiles": [20, 50, 80]},
    },
)

# ---------------------------------------------------------------- fig3
sweep_evaluators = []
for b in fig2_betas:
    for e in fig2_etas:
        sweep_evaluators.append(
            {"name": f"sweep_b{b:g}_e{e:g}", "role": "expert", "estimator": single(0.0, b, e)}
        )
for a in fig2_alphas:
    for e in fig2_etas:
        sweep_evaluators.append(
            {"name": f"sweep_a{a:g}_e{e:g}", "role": "expert", "estimator": single(a, 0.0, e)}
        )

dump(
    "fig3-sweep",
    {
        "name": "fig3-sweep",
        "sim": {"feedback_delay": 5, "cqi_period": 10, "cqi_noise": "none",
                "cqi_enabled": True},
        "traces": [
            {"kind": "random_walk", "start_db": 12.0, "step_std_db": 0.3, "length": 3000},
            {"kind": "random_walk", "start_db": 10.0, "step_std_db": 0.05, "length": 3000},
        ],
        "seeds": {"base": 1, "count": 20},
        "init_db": 0.0,
        "generators": [
            {"name": "olla_d1", "estimator": {"type": "olla", "step_db": 1.0,
                                              "bler_target": 0.1},
             "policy": policy_fixed_tau},
        ],
        "evaluators": sweep_evaluators,
        "outputs": {"datasets": False, "warmup_slots": 100, "percentiles": [20, 50, 80]},
    },
)

# ---------------------------------------------------------------- fig4
fig4_gens = []
for pe in [0.0, 0.05, 0.1, 0.2, 0.3]:
    fig4_gens.append(
        {"name": f"fs12_pe{pe:g}",
         "estimator": fs([0.0], [0.0, 0.15, 0.3], [0.5, 1.0, 2.0, 3.0], 1e-3),
         "policy": {"bler_target": 0.1, "explore_prob": pe, "target_gain": 0.02}}
    )

dump(
    "fig4-tradeoff",
    {
        "name": "fig4-tradeoff",
        "sim": {"feedback_delay": 5, "cqi_enabled": False},
        "traces": [
            {"kind": "random_walk", "start_db": 10.0, "step_std_db": 0.2, "length": 3000}
        ],
        "seeds": {"base": 1, "count": 20},
        "init_db": 0.0,
        "generators": fig4_gens,
        "evaluators": [],
        "outputs": {"datasets": False, "warmup_slots": 100, "percentiles": [20, 50, 80]},
    },
)

# ---------------------------------------------------------------- mismatch
dump(
    "mismatch-robustness",
    {
        "name": "mismatch-robustness",
        "sim": {"feedback_delay": 5, "cqi_enabled": False, "true_cbs": 1000, "est_cbs": 100},
        "traces": mixed_traces,
        "seeds": {"base": 1, "count": 50},
        "init_db": 0.0,
        "generators": [
            {"name": "olla_d2", "estimator": {"type": "olla", "step_db": 2.0,
                                              "bler_target": 0.1},
             "policy": policy_fixed_tau},
        ],
        "evaluators": [
            {"name": "fs12", "role": "meta",
             "estimator": fs([0.0], [0.0, 0.15, 0.3], [0.5, 1.0, 2.0, 3.0], 1e-3)},
            {"name": "salad", "role": "expert", "estimator": {"type": "salad"}},
        ],
        "outputs": {"datasets": False, "warmup_slots": 100, "percentiles": [20, 50, 80]},
    },
)

# ------------------------------------------------- golden generation helper
dump(
    "golden-gen",
    {
        "name": "golden-gen",
        "sim": {"feedback_delay": 5, "cqi_period": 10, "cqi_noise": "pm1",
                "cqi_enabled": True},
        "traces": [
            {"kind": "random_walk", "start_db": 10.0, "step_std_db": 0.2, "length": 400}
        ],
        "seeds": {"base": 7, "count": 1},
        "init_db": 0.0,
        "generators": [
            {"name": "olla_d1", "estimator": {"type": "olla", "step_db": 1.0,
                                              "bler_target": 0.1},
             "policy": policy_fixed_tau},
        ],
        "evaluators": [],
        "outputs": {"datasets": True, "warmup_slots": 100, "percentiles": [20, 50, 80]},
    },
)

print("wrote", sorted(p.name for p in OUT.glob("*.json")))
