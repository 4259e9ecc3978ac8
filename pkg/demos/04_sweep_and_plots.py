#!/usr/bin/env python3
"""A miniature severity sweep with figures.

Runs one scenario over a 2x2 grid of transmissibility and recovery time with
two seeds per cell, writes the per-cell traces and the summary table, checks
the outputs, and emits the comparison figures. Trained styles plug into the
same harness through ExperimentConfig.policies (see 03_learning_curve.py and
the README's training section).
"""
from pathlib import Path

from epicoop import ExperimentConfig, SimConfig, run_sweep, verify_outputs
from epicoop.experiments import seed_mean

OUT = Path("out/demo_sweep")

config = ExperimentConfig(
    scenarios=({"kind": "single", "style": "ignorant"},),
    zeta_grid=(0.05, 0.15),
    recovery_grid=(2.0, 8.0),
    seeds=(0, 1),
    sim=SimConfig(num_nodes=15, episode_days=30, ticks_per_day=10),
    output_dir=str(OUT),
    emit_plots=True,
)

rows = run_sweep(config)
print(f"{len(rows)} cells written under {OUT}/\n")

print("zeta  recovery  mean cum_infections (2 seeds)")
for zeta in config.zeta_grid:
    for recovery in config.recovery_grid:
        cell = seed_mean(rows, zeta=zeta, recovery_days=float(recovery))
        print(f"{zeta:4.2f}  {recovery:8.0f}  {cell['final_cum_infections']:10.1f}")

problems = verify_outputs(str(OUT))
print("\noutput check:", "clean" if not problems else problems)

print("\nfigures:")
for path in sorted((OUT / "plots").glob("*.svg")):
    print(" ", path)
