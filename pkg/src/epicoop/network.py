"""Temporal directed network state.

The network is dense: every ordered pair of distinct nodes carries an edge
state that is rewritten each tick. Node preferences (the genome driving the
scoring rules) persist between policy decisions; edge states do not.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import NUM_FEATURES, STYLES, SimConfig, canonical_style
from .errors import ContractError
from .rng import split_streams


@dataclass
class PreferenceGenome:
    """Per-node social preferences.

    Each preference entry is -1, 0 or +1 and its paired weight lies in [0, 1],
    with weight exactly 0 iff the preference is 0. The common-friend pair is
    carried for completeness but does not enter the scoring rules.
    """

    attachment: np.ndarray
    attachment_weight: np.ndarray
    homophily: np.ndarray
    homophily_weight: np.ndarray
    common_friend: float = 0.0
    common_friend_weight: float = 0.0

    @classmethod
    def zeros(cls, num_features: int = NUM_FEATURES) -> "PreferenceGenome":
        return cls(
            attachment=np.zeros(num_features),
            attachment_weight=np.zeros(num_features),
            homophily=np.zeros(num_features),
            homophily_weight=np.zeros(num_features),
        )

    def validate(self) -> "PreferenceGenome":
        for prefs, weights, label in (
            (self.attachment, self.attachment_weight, "attachment"),
            (self.homophily, self.homophily_weight, "homophily"),
        ):
            prefs = np.asarray(prefs, dtype=float)
            weights = np.asarray(weights, dtype=float)
            if prefs.shape != weights.shape:
                raise ContractError(f"{label} preference/weight length mismatch")
            if not np.all(np.isin(prefs, (-1.0, 0.0, 1.0))):
                raise ContractError(f"{label} preferences must be -1, 0 or +1")
            if np.any(weights < 0) or np.any(weights > 1):
                raise ContractError(f"{label} weights must lie in [0, 1]")
            if np.any((prefs == 0) != (weights == 0)):
                raise ContractError(f"{label} weight must be 0 exactly when the preference is 0")
        if self.common_friend not in (-1.0, 0.0, 1.0):
            raise ContractError("common-friend preference must be -1, 0 or +1")
        if not 0 <= self.common_friend_weight <= 1:
            raise ContractError("common-friend weight must lie in [0, 1]")
        if (self.common_friend == 0) != (self.common_friend_weight == 0):
            raise ContractError("common-friend weight must be 0 exactly when the preference is 0")
        return self

    def copy(self) -> "PreferenceGenome":
        return PreferenceGenome(
            attachment=self.attachment.copy(),
            attachment_weight=self.attachment_weight.copy(),
            homophily=self.homophily.copy(),
            homophily_weight=self.homophily_weight.copy(),
            common_friend=self.common_friend,
            common_friend_weight=self.common_friend_weight,
        )


@dataclass
class NodeState:
    """Snapshot of one node (detached from the network arrays)."""

    node_id: int
    style: str
    features: np.ndarray
    genome: PreferenceGenome
    health: int
    recovery_clock: int
    capital_spent: int
    capital_limit: int
    reward_accum: float


@dataclass
class EdgeState:
    """Snapshot of one directed edge at the current tick."""

    source: int
    target: int
    interacted: int
    intensity: float
    bonded: int
    bond_intensity: float
    # (tick, intensity) pairs for the interactions still inside the bond window.
    history: list = field(default_factory=list)


class TemporalNetwork:
    """Dense mutable state for one simulation run."""

    def __init__(self, config: SimConfig, styles=None):
        config.validate()
        n = config.num_nodes
        self.config = config
        self.num_nodes = n
        self.tick = 0
        if styles is None:
            styles = ["cooperative"] * n
        styles = [canonical_style(s) for s in styles]
        if len(styles) != n:
            raise ContractError(f"expected {n} styles, got {len(styles)}")
        self.styles = np.array([STYLES.index(s) for s in styles], dtype=np.int8)

        self.features = np.zeros((n, NUM_FEATURES))
        self.attachment = np.zeros((n, NUM_FEATURES))
        self.attachment_weight = np.zeros((n, NUM_FEATURES))
        self.homophily = np.zeros((n, NUM_FEATURES))
        self.homophily_weight = np.zeros((n, NUM_FEATURES))
        self.common_friend = np.zeros(n)
        self.common_friend_weight = np.zeros(n)

        self.health = np.zeros(n, dtype=np.uint8)
        self.immune = np.zeros(n, dtype=bool)
        self.recovery_clock = np.zeros(n, dtype=np.int64)
        self.capital_spent = np.zeros(n, dtype=np.int64)
        self.capital_limit = np.full(n, n - 1, dtype=np.int64)
        self.reward_accum = np.zeros(n)

        # Current-tick edge state plus a ring buffer covering the bond window.
        self.interacted = np.zeros((n, n), dtype=np.uint8)
        self.intensity = np.zeros((n, n))
        self.bonded = np.zeros((n, n), dtype=np.uint8)
        self.bond_intensity = np.zeros((n, n))
        depth = config.bond_window_ticks + 1
        self._hist_depth = depth
        self.interaction_history = np.zeros((depth, n, n), dtype=np.uint8)
        self.intensity_history = np.zeros((depth, n, n))

    # -- style helpers -------------------------------------------------------

    def style_of(self, i: int) -> str:
        return STYLES[self.styles[i]]

    def nodes_of_style(self, style: str) -> np.ndarray:
        return np.flatnonzero(self.styles == STYLES.index(canonical_style(style)))

    # -- genome access -------------------------------------------------------

    def genome(self, i: int) -> PreferenceGenome:
        return PreferenceGenome(
            attachment=self.attachment[i].copy(),
            attachment_weight=self.attachment_weight[i].copy(),
            homophily=self.homophily[i].copy(),
            homophily_weight=self.homophily_weight[i].copy(),
            common_friend=float(self.common_friend[i]),
            common_friend_weight=float(self.common_friend_weight[i]),
        )

    def set_genome(self, i: int, genome: PreferenceGenome) -> None:
        genome.validate()
        self.attachment[i] = genome.attachment
        self.attachment_weight[i] = genome.attachment_weight
        self.homophily[i] = genome.homophily
        self.homophily_weight[i] = genome.homophily_weight
        self.common_friend[i] = genome.common_friend
        self.common_friend_weight[i] = genome.common_friend_weight

    # -- health --------------------------------------------------------------

    def set_health(self, i: int, infected: bool, clock: int = 0) -> None:
        self.health[i] = 1 if infected else 0
        self.features[i, 0] = 1.0 if infected else 0.0
        self.recovery_clock[i] = clock if infected else 0

    # -- edge history --------------------------------------------------------

    def record_interactions(self, tick: int, interacted: np.ndarray, intensity: np.ndarray) -> None:
        """Store a tick's interaction matrix in the ring buffer."""
        slot = tick % self._hist_depth
        self.interaction_history[slot] = interacted
        self.intensity_history[slot] = intensity
        self.interacted = interacted
        self.intensity = intensity

    def window_counts(self) -> np.ndarray:
        """Interactions per ordered pair inside the bond window (incl. current tick)."""
        return self.interaction_history.sum(axis=0, dtype=np.int64)

    def window_intensity_sums(self) -> np.ndarray:
        return self.intensity_history.sum(axis=0)

    # -- snapshots -----------------------------------------------------------

    def node_state(self, i: int) -> NodeState:
        return NodeState(
            node_id=i,
            style=self.style_of(i),
            features=self.features[i].copy(),
            genome=self.genome(i),
            health=int(self.health[i]),
            recovery_clock=int(self.recovery_clock[i]),
            capital_spent=int(self.capital_spent[i]),
            capital_limit=int(self.capital_limit[i]),
            reward_accum=float(self.reward_accum[i]),
        )

    def edge_state(self, i: int, j: int) -> EdgeState:
        if i == j:
            raise ContractError("self-edges do not exist")
        history = []
        window = self.config.bond_window_ticks
        current = self.tick
        for tick in range(max(0, current - window), current + 1):
            slot = tick % self._hist_depth
            if self.interaction_history[slot, i, j]:
                history.append((tick, float(self.intensity_history[slot, i, j])))
        return EdgeState(
            source=i,
            target=j,
            interacted=int(self.interacted[i, j]),
            intensity=float(self.intensity[i, j]),
            bonded=int(self.bonded[i, j]),
            bond_intensity=float(self.bond_intensity[i, j]),
            history=history,
        )


def new_network(config: SimConfig, rng_seed: int = 0, styles=None, feature_rng=None) -> TemporalNetwork:
    """Fresh network: zero genomes, zero edges, healthy nodes, random static trait."""
    net = TemporalNetwork(config, styles)
    if feature_rng is None:
        feature_rng = split_streams(rng_seed)["features"]
    net.features[:, 1] = feature_rng.uniform(0.0, 1.0, size=config.num_nodes)
    return net


def encounter_set(net: TemporalNetwork) -> list[tuple[int, int]]:
    """Ordered pairs eligible for evaluation under full mixing (no self-pairs)."""
    n = net.num_nodes
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def encounter_mask(num_nodes: int, prob: float, rng=None) -> np.ndarray:
    """Symmetric boolean encounter matrix with an empty diagonal.

    Full mixing (prob 1) needs no generator; partial mixing draws one Bernoulli
    per unordered pair and mirrors it.
    """
    mask = ~np.eye(num_nodes, dtype=bool)
    if prob >= 1.0:
        return mask
    if rng is None:
        raise ContractError("partial mixing requires a generator")
    upper = np.triu(rng.random((num_nodes, num_nodes)) < prob, k=1)
    return (upper | upper.T) & mask
