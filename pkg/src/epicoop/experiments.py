"""Experiment harness: scenario construction, severity sweeps, summaries.

Scenario kinds:
  single  - every node runs one style;
  mixed   - k free-rider nodes (egocentric or ignorant) among cooperative
            nodes; riders sit at the lowest node ids (including the epidemic
            seed) unless random placement is requested.

Policies are trained once at the default severity and reused across the whole
grid. Every (scenario, zeta, recovery, seed) cell yields one trace CSV and one
summary row.
"""
from __future__ import annotations

import csv
import dataclasses
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .config import COOPERATIVE, EGOCENTRIC, IGNORANT, ExperimentConfig, SimConfig, canonical_style
from .engine import EpisodeTrace, run_episode
from .errors import ConfigError
from .policy_io import load_policy

SUMMARY_COLUMNS = (
    "scenario",
    "kind",
    "style",
    "rider_kind",
    "rider_count",
    "zeta",
    "recovery_days",
    "seed",
    "final_cum_infections",
    "final_cum_reward",
)


def scenario_name(spec: dict) -> str:
    if spec["kind"] == "single":
        return f"single_{canonical_style(spec['style'])}"
    rider = canonical_style(spec["rider_kind"])
    return f"mixed_{rider}_k{int(spec['rider_count'])}"


def scenario_styles(spec: dict, num_nodes: int, random_placement: bool = False,
                    seed: int = 0) -> list[str]:
    """Per-node style assignment for one scenario."""
    if spec["kind"] == "single":
        return [canonical_style(spec["style"])] * num_nodes
    rider = canonical_style(spec["rider_kind"])
    count = int(spec["rider_count"])
    if not 0 <= count <= num_nodes:
        raise ConfigError(f"rider count {count} outside [0, {num_nodes}]")
    styles = [COOPERATIVE] * num_nodes
    if random_placement:
        rng = np.random.default_rng(np.random.SeedSequence((seed, 1)))
        rider_ids = rng.choice(num_nodes, size=count, replace=False)
    else:
        rider_ids = range(count)
    for node in rider_ids:
        styles[node] = rider
    return styles


def styles_needing_policies(styles) -> set[str]:
    return {s for s in styles if s in (COOPERATIVE, EGOCENTRIC)}


def load_actors(policy_paths: dict, needed: set[str]) -> dict:
    actors = {}
    for style in needed:
        path = policy_paths.get(style)
        if not path or not os.path.exists(path):
            raise ConfigError(
                f"scenario needs a trained {style} policy; run `epicoop train --style {style}` "
                f"and point the config's policies.{style} at the file"
            )
        actors[style], _ = load_policy(path)
    return actors


def trace_filename(name: str, zeta: float, recovery_days: float, seed: int) -> str:
    return f"{name}__zeta{zeta:.2f}__rt{recovery_days:g}__seed{seed}.csv"


def run_cell(sim: SimConfig, spec: dict, zeta: float, recovery_days: float, seed: int,
             actors: dict, random_placement: bool = False) -> tuple[dict, EpisodeTrace]:
    """One grid cell: returns its summary row and trace."""
    cell_sim = dataclasses.replace(sim, transmissibility=zeta, recovery_days=recovery_days)
    styles = scenario_styles(spec, cell_sim.num_nodes, random_placement, seed)
    trace = run_episode(cell_sim, styles, actors=actors, seed=seed)
    row = {
        "scenario": scenario_name(spec),
        "kind": spec["kind"],
        "style": canonical_style(spec.get("style", "")) if spec["kind"] == "single" else "",
        "rider_kind": canonical_style(spec["rider_kind"]) if spec["kind"] == "mixed" else "",
        "rider_count": int(spec.get("rider_count", 0)) if spec["kind"] == "mixed" else 0,
        "zeta": float(zeta),
        "recovery_days": float(recovery_days),
        "seed": int(seed),
        "final_cum_infections": trace.final_cum_infections,
        "final_cum_reward": trace.final_cum_reward,
    }
    return row, trace


def _expand_scenarios(config: ExperimentConfig) -> list[dict]:
    """Mixed scenarios without an explicit rider_count fan out over rider_counts."""
    expanded = []
    for spec in config.scenarios:
        if spec["kind"] == "mixed" and "rider_count" not in spec:
            for k in config.rider_counts:
                expanded.append({**spec, "rider_count": int(k)})
        else:
            expanded.append(dict(spec))
    return expanded


def _run_cell_task(args):
    sim, spec, zeta, recovery, seed, policy_paths, random_placement, trace_path = args
    styles = scenario_styles(spec, sim.num_nodes, random_placement, seed)
    actors = load_actors(policy_paths, styles_needing_policies(styles))
    row, trace = run_cell(sim, spec, zeta, recovery, seed, actors, random_placement)
    if trace_path:
        trace.write_csv(trace_path)
    return row


def run_sweep(config: ExperimentConfig, progress=None) -> list[dict]:
    """Run every (scenario, zeta, recovery, seed) cell; write traces + summary."""
    config.validate()
    if not config.output_dir:
        raise ConfigError("experiment config needs an output_dir")
    traces_dir = os.path.join(config.output_dir, "traces")
    os.makedirs(traces_dir, exist_ok=True)

    tasks = []
    for spec in _expand_scenarios(config):
        name = scenario_name(spec)
        for zeta in config.zeta_grid:
            for recovery in config.recovery_grid:
                for seed in config.seeds:
                    trace_path = os.path.join(traces_dir, trace_filename(name, zeta, recovery, seed))
                    tasks.append((config.sim, spec, zeta, recovery, seed,
                                  dict(config.policies), config.random_rider_placement, trace_path))

    rows = []
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for row in pool.map(_run_cell_task, tasks):
                rows.append(row)
                if progress is not None:
                    progress(row)
    else:
        for task in tasks:
            rows.append(_run_cell_task(task))
            if progress is not None:
                progress(rows[-1])

    rows.sort(key=lambda r: (r["scenario"], r["zeta"], r["recovery_days"], r["seed"]))
    write_summary_csv(os.path.join(config.output_dir, "summary.csv"), rows)
    if config.emit_plots:
        from .plots import emit_plots

        emit_plots(config.output_dir)
    return rows


def write_summary_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            writer.writerow([
                row["scenario"], row["kind"], row["style"], row["rider_kind"],
                int(row["rider_count"]),
                repr(float(row["zeta"])), repr(float(row["recovery_days"])),
                int(row["seed"]), int(row["final_cum_infections"]),
                repr(float(row["final_cum_reward"])),
            ])


def read_summary_csv(path) -> list[dict]:
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != SUMMARY_COLUMNS:
            raise ConfigError(f"unexpected summary columns in {path}")
        for raw in reader:
            rows.append({
                "scenario": raw["scenario"],
                "kind": raw["kind"],
                "style": raw["style"],
                "rider_kind": raw["rider_kind"],
                "rider_count": int(raw["rider_count"]),
                "zeta": float(raw["zeta"]),
                "recovery_days": float(raw["recovery_days"]),
                "seed": int(raw["seed"]),
                "final_cum_infections": int(raw["final_cum_infections"]),
                "final_cum_reward": float(raw["final_cum_reward"]),
            })
    return rows


def verify_outputs(output_dir) -> list[str]:
    """Recompute summary finals from the stored traces; returns mismatch messages."""
    problems = []
    summary_path = os.path.join(output_dir, "summary.csv")
    if not os.path.exists(summary_path):
        return [f"missing {summary_path}"]
    rows = read_summary_csv(summary_path)
    for row in rows:
        path = os.path.join(output_dir, "traces",
                            trace_filename(row["scenario"], row["zeta"], row["recovery_days"], row["seed"]))
        if not os.path.exists(path):
            problems.append(f"missing trace {path}")
            continue
        trace = EpisodeTrace.read_csv(path)
        if trace.final_cum_infections != row["final_cum_infections"]:
            problems.append(
                f"{os.path.basename(path)}: final_cum_infections {trace.final_cum_infections} "
                f"!= summary {row['final_cum_infections']}"
            )
        if trace.final_cum_reward != row["final_cum_reward"]:
            problems.append(
                f"{os.path.basename(path)}: final_cum_reward {trace.final_cum_reward!r} "
                f"!= summary {row['final_cum_reward']!r}"
            )
    return problems


def seed_mean(rows, **filters) -> dict:
    """Mean finals over seeds for the rows matching the filters."""
    selected = [r for r in rows if all(r[k] == v for k, v in filters.items())]
    if not selected:
        raise ConfigError(f"no summary rows match {filters}")
    return {
        "final_cum_infections": float(np.mean([r["final_cum_infections"] for r in selected])),
        "final_cum_reward": float(np.mean([r["final_cum_reward"] for r in selected])),
        "count": len(selected),
    }
