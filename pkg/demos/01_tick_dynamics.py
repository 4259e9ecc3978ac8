#!/usr/bin/env python3
"""How one tick decides who interacts.

Walks the chain by hand for a single pair of nodes (preferences, score,
threshold, intensity, bond), then lets a small random-acting population run
for a few days and prints the per-day totals.
"""
import numpy as np

from epicoop import SimConfig, run_episode
from epicoop.interactions import (
    bond_intensity,
    interaction_intensity,
    interaction_score,
    threshold,
)
from epicoop.network import PreferenceGenome

# Two nodes with fixed feature vectors. Features live in [0, 1]; node b is
# "loud" on feature 0 and quiet on feature 1.
features_a = np.array([0.2, 0.9])
features_b = np.array([0.9, 0.1])

# Node a's preferences: attach to high feature-0 targets, and prefer
# dissimilarity on feature 1 (positive homophily entries reward distance).
genome_a = PreferenceGenome(
    attachment=np.array([1.0, 0.0]),
    attachment_weight=np.array([0.8, 0.0]),
    homophily=np.array([0.0, 1.0]),
    homophily_weight=np.array([0.0, 0.6]),
).validate()

score = interaction_score(features_a, features_b, genome_a, encountered=True, noise=0.0)
print("score a->b")
print(f"  homophily   {score.homophily:.3f}   (|0.2-0.9|*0 + |0.9-0.1|*0.6)")
print(f"  attachment  {score.pref_attach:.3f}   (0.9*0.8 + 0.1*0)")
print(f"  total       {score.total:.3f}   (mean of the two parts)")

# The threshold doubles for an infected decider (eta = 2), so sick nodes are
# pickier about going out.
for health, label in ((0, "healthy"), (1, "infected")):
    thresh = threshold(health, base=0.2, eta=2.0)
    goes = "interacts" if score.total > thresh else "stays home"
    print(f"  {label:8s} threshold {thresh:.2f} -> {goes}")

# A realized interaction carries an intensity that grows with the margin
# over the threshold.
w = interaction_intensity(score.total, 0.2, interacted=1, b=0.25, alpha=0.125)
print(f"  intensity   {w:.4f}   (0.25 + 0.125 * margin)")

# A bond needs the reverse direction too: say b answered one tick later with
# intensity 0.30. The bond averages each direction's recent mean.
print(f"  bond        {bond_intensity([(9, w)], [(10, 0.30)]):.4f}")

# Now a whole population of random actors for five days.
sim = SimConfig(num_nodes=8, episode_days=5, ticks_per_day=10,
                recovery_days=1.0, transmissibility=0.2)
trace = run_episode(sim, ["ignorant"] * sim.num_nodes, seed=7)

per_day = trace.interactions.reshape(sim.episode_days, sim.ticks_per_day)
bonds_day = trace.bonds.reshape(sim.episode_days, sim.ticks_per_day)
print("\nday  interactions  bonds(mean)  infected(end of day)")
for day in range(sim.episode_days):
    print(f"{day:3d}  {per_day[day].sum():12d}  {bonds_day[day].mean():11.1f}"
          f"  {trace.daily_last(trace.infected_now)[day]:8d}")
print(f"\ncumulative infections after {sim.episode_days} days:",
      trace.final_cum_infections)
