"""Figure emission from sweep outputs.

One infection figure and one reward figure per (zeta, recovery) cell compare
the single-style scenarios; rider figures compare free-rider counts against
the fully cooperative baseline. Curves are seed means with a min/max envelope
at daily resolution. SVGs are byte-deterministic: fixed hash salt, no date
metadata.
"""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import numpy as np

from .engine import EpisodeTrace
from .errors import ConfigError
from .experiments import read_summary_csv, trace_filename

plt.rcParams["svg.hashsalt"] = "epicoop"

_STYLE_COLORS = {
    "single_cooperative": "tab:blue",
    "single_egocentric": "tab:red",
    "single_ignorant": "tab:green",
}


def _daily_curves(output_dir, scenario, zeta, recovery, seeds, column):
    """(days, mean, lo, hi) of a trace column sampled at each day's last tick."""
    per_seed = []
    for seed in seeds:
        path = os.path.join(output_dir, "traces", trace_filename(scenario, zeta, recovery, seed))
        trace = EpisodeTrace.read_csv(path)
        per_seed.append(trace.daily_last(getattr(trace, column)))
    stacked = np.stack(per_seed)
    days = np.arange(stacked.shape[1])
    return days, stacked.mean(axis=0), stacked.min(axis=0), stacked.max(axis=0)


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _panel(output_dir, curves, title, ylabel, path):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, color, (days, mean, lo, hi) in curves:
        ax.plot(days, mean, label=label, color=color)
        ax.fill_between(days, lo, hi, color=color, alpha=0.15, linewidth=0)
    ax.set_xlabel("day")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def emit_plots(output_dir, plots_dir=None) -> list[str]:
    """Render every figure the summary supports; returns the file paths."""
    summary_path = os.path.join(output_dir, "summary.csv")
    if not os.path.exists(summary_path):
        raise ConfigError(f"no summary.csv under {output_dir}; run a sweep first")
    rows = read_summary_csv(summary_path)
    if plots_dir is None:
        plots_dir = os.path.join(output_dir, "plots")
    os.makedirs(plots_dir, exist_ok=True)

    seeds = sorted({r["seed"] for r in rows})
    cells = sorted({(r["zeta"], r["recovery_days"]) for r in rows})
    singles = sorted({r["scenario"] for r in rows if r["kind"] == "single"})
    rider_kinds = sorted({r["rider_kind"] for r in rows if r["kind"] == "mixed"})
    have_coop_baseline = "single_cooperative" in singles

    written = []
    for zeta, recovery in cells:
        tag = f"RT{recovery:g}_Inf{zeta:.2f}"
        if singles:
            for column, word, ylabel in (
                ("cum_infections", "Infection", "cumulative infections"),
                ("cum_reward", "Reward", "cumulative reward"),
            ):
                curves = []
                for scenario in singles:
                    label = scenario.replace("single_", "")
                    color = _STYLE_COLORS.get(scenario)
                    curves.append((label, color,
                                   _daily_curves(output_dir, scenario, zeta, recovery, seeds, column)))
                path = os.path.join(plots_dir, f"Compare_Each{word}_{tag}.svg")
                _panel(output_dir, curves, f"{word.lower()} by style ({tag})", ylabel, path)
                written.append(path)
        for rider in rider_kinds:
            ks = sorted({r["rider_count"] for r in rows
                         if r["kind"] == "mixed" and r["rider_kind"] == rider})
            for column, word, ylabel in (
                ("cum_infections", "Infection", "cumulative infections"),
                ("cum_reward", "Reward", "cumulative reward"),
            ):
                curves = []
                if have_coop_baseline:
                    curves.append(("k=0", "black",
                                   _daily_curves(output_dir, "single_cooperative", zeta, recovery, seeds, column)))
                cmap = plt.get_cmap("viridis")
                for idx, k in enumerate(ks):
                    color = cmap(0.15 + 0.7 * idx / max(len(ks) - 1, 1))
                    curves.append((f"k={k}", color,
                                   _daily_curves(output_dir, f"mixed_{rider}_k{k}", zeta, recovery, seeds, column)))
                path = os.path.join(plots_dir, f"Compare_Rider{word}_{rider}_{tag}.svg")
                _panel(output_dir, curves, f"{rider} riders, {word.lower()} ({tag})", ylabel, path)
                written.append(path)
    return written
