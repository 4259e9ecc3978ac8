#!/usr/bin/env python3
"""Epidemic shapes without any learning.

Runs the same random-acting population under increasing transmissibility and
recovery times, then applies the trace analysis helpers: die-out day and the
dominant oscillation period of the daily infection series.
"""
from epicoop import SimConfig, run_episode
from epicoop.analysis import dominant_period_days, first_clear_day

POPULATION = 30
SEED = 3

print("zeta  recovery  cum_infections  peak  clear_day  period_days")
for zeta, recovery in [(0.01, 1.0), (0.05, 5.0), (0.10, 5.0), (0.20, 10.0)]:
    sim = SimConfig(num_nodes=POPULATION, transmissibility=zeta,
                    recovery_days=recovery)
    trace = run_episode(sim, ["ignorant"] * POPULATION, seed=SEED)
    daily = trace.daily_last(trace.infected_now)
    clear = first_clear_day(trace)
    period = dominant_period_days(daily)
    print(f"{zeta:4.2f}  {recovery:8.0f}  {trace.final_cum_infections:14d}"
          f"  {daily.max():4d}  {str(clear):>9s}  {str(period):>11s}")

# Only a very mild epidemic burns out on its own: random actors meet so
# densely that moderate settings saturate the population and never clear.
# The severity sweep in the experiment harness maps this surface
# systematically (see 04_sweep_and_plots.py).
