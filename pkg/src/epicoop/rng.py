"""Deterministic random streams, one per concern.

Every stochastic phase of a run (feature init, encounter draws, score noise,
epidemic draws, ignorant re-rolls, exploration, target smoothing, replay
sampling, net init) pulls from its own child generator of a single root seed,
so changing how many draws one phase consumes never perturbs another.
"""
from __future__ import annotations

import numpy as np

STREAM_NAMES = (
    "features",
    "encounters",
    "score_noise",
    "epidemic",
    "ignorant",
    "exploration",
    "target_noise",
    "replay",
    "net_init",
)


def split_streams(seed: int) -> dict[str, np.random.Generator]:
    """Spawn one independent generator per named concern from a root seed."""
    root = np.random.SeedSequence(seed)
    children = root.spawn(len(STREAM_NAMES))
    return {name: np.random.default_rng(child) for name, child in zip(STREAM_NAMES, children)}


def generator(seed: int) -> np.random.Generator:
    """A single standalone generator (used by tests and small utilities)."""
    return np.random.default_rng(np.random.SeedSequence(seed))
