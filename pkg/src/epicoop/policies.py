"""Agent-facing layer: observations, action decoding, rewards, random style.

Observation layout per node (all entries in [0, 1]):
    [health flag, static trait, out-interactions last epoch / (N-1),
     in-interactions last epoch / (N-1), current bond count / (N-1),
     current spreading risk]
The collective mind observes the concatenation over all nodes; a single node
observes its own block plus the element-wise mean of the other blocks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .epidemic import spreading_risks
from .errors import ContractError
from .network import NUM_FEATURES, PreferenceGenome, TemporalNetwork

BLOCK_SIZE = 6
# Action entries per controlled node: one per feature for attachment, one per
# feature for homophily, one for the capital limit.
ACTION_SIZE = 2 * NUM_FEATURES + 1


def observation_blocks(net: TemporalNetwork, transmissibility: float,
                       out_last_epoch: np.ndarray, in_last_epoch: np.ndarray) -> np.ndarray:
    """(N, 6) observation blocks at a decision boundary."""
    n = net.num_nodes
    denom = max(n - 1, 1)
    blocks = np.zeros((n, BLOCK_SIZE))
    blocks[:, 0] = net.health
    blocks[:, 1] = net.features[:, 1]
    blocks[:, 2] = np.clip(out_last_epoch / denom, 0.0, 1.0)
    blocks[:, 3] = np.clip(in_last_epoch / denom, 0.0, 1.0)
    blocks[:, 4] = net.bonded.sum(axis=1) / denom
    blocks[:, 5] = spreading_risks(net, transmissibility)
    return blocks


def collective_observation(blocks: np.ndarray) -> np.ndarray:
    """Flat concatenation of all node blocks (the collective mind's view)."""
    return blocks.reshape(-1).copy()


def local_views(blocks: np.ndarray) -> np.ndarray:
    """(N, 12) per-node views: own block followed by the mean of the others."""
    n = blocks.shape[0]
    if n == 1:
        others = np.zeros_like(blocks)
    else:
        others = (blocks.sum(axis=0, keepdims=True) - blocks) / (n - 1)
    return np.concatenate([blocks, others], axis=1)


def local_views_from_flat(flat: np.ndarray, num_nodes: int) -> np.ndarray:
    """Rebuild per-node views from a flattened collective observation.

    Accepts a single observation or a batch (leading axis preserved).
    """
    arr = np.asarray(flat, dtype=float)
    single = arr.ndim == 1
    if single:
        arr = arr[None, :]
    if arr.shape[1] != num_nodes * BLOCK_SIZE:
        raise ContractError("flat observation length does not match the node count")
    blocks = arr.reshape(arr.shape[0], num_nodes, BLOCK_SIZE)
    if num_nodes == 1:
        others = np.zeros_like(blocks)
    else:
        others = (blocks.sum(axis=1, keepdims=True) - blocks) / (num_nodes - 1)
    views = np.concatenate([blocks, others], axis=2)
    return views[0] if single else views


def decode_action(action, num_nodes: int, deadzone: float) -> tuple[PreferenceGenome, int]:
    """Map one node's raw action vector to a genome and a capital limit.

    Entries are clipped to [-1, 1]. |a| below the deadzone disables the
    preference (0, 0); otherwise preference = sign(a) and weight = |a|. The
    final entry scales the capital limit across [1, N-1].
    """
    action = np.clip(np.asarray(action, dtype=float), -1.0, 1.0)
    if action.shape != (ACTION_SIZE,):
        raise ContractError(f"expected an action of length {ACTION_SIZE}")
    genome = PreferenceGenome.zeros(NUM_FEATURES)
    for k in range(NUM_FEATURES):
        a = action[k]
        if abs(a) >= deadzone and a != 0.0:
            genome.attachment[k] = np.sign(a)
            genome.attachment_weight[k] = abs(a)
    for k in range(NUM_FEATURES):
        a = action[NUM_FEATURES + k]
        if abs(a) >= deadzone and a != 0.0:
            genome.homophily[k] = np.sign(a)
            genome.homophily_weight[k] = abs(a)
    span = max(num_nodes - 2, 0)
    capital = int(np.rint(1 + abs(action[-1]) * span))
    capital = max(1, min(capital, max(num_nodes - 1, 1)))
    return genome, capital


def encode_genome(genome: PreferenceGenome, capital_limit: int, num_nodes: int) -> np.ndarray:
    """Inverse of decode_action for representable genomes (weights 0 or >= deadzone)."""
    action = np.zeros(ACTION_SIZE)
    action[:NUM_FEATURES] = genome.attachment * genome.attachment_weight
    action[NUM_FEATURES:2 * NUM_FEATURES] = genome.homophily * genome.homophily_weight
    if num_nodes > 2:
        action[-1] = (capital_limit - 1) / (num_nodes - 2)
    return action


def ignorant_act(rng: np.random.Generator, num_features: int = NUM_FEATURES) -> PreferenceGenome:
    """Random genome: each scored preference uniform in {-1, 0, +1}; active
    preferences get a weight uniform in (0, 1]. The common-friend gene stays 0."""
    genome = PreferenceGenome.zeros(num_features)
    for prefs, weights in ((genome.attachment, genome.attachment_weight),
                           (genome.homophily, genome.homophily_weight)):
        drawn = rng.integers(-1, 2, size=num_features).astype(float)
        w = 1.0 - rng.random(num_features)
        prefs[:] = drawn
        weights[:] = np.where(drawn != 0.0, w, 0.0)
    return genome


@dataclass
class TickRewards:
    cooperative: float
    egocentric: np.ndarray
    per_node: np.ndarray
    scenario: float


def reward_cooperative(net: TemporalNetwork, delta: float, transmissibility: float) -> float:
    """Collective reward: population-averaged bond value, risk-discounted, with
    infected nodes' bond value depreciated by delta."""
    n = net.num_nodes
    risks = spreading_risks(net, transmissibility)
    bond_value = net.bond_intensity.sum(axis=1) * (1.0 - risks)
    infected = net.health == 1
    healthy_sum = np.sum(bond_value[~infected])
    infected_sum = np.sum(bond_value[infected])
    return healthy_sum / n + delta * infected_sum / n


def reward_egocentric_all(net: TemporalNetwork, delta: float, transmissibility: float) -> np.ndarray:
    """Selfish reward per node: own risk-discounted bond value, depreciated by
    delta while infected."""
    risks = spreading_risks(net, transmissibility)
    bond_value = net.bond_intensity.sum(axis=1) * (1.0 - risks)
    return np.where(net.health == 1, delta * bond_value, bond_value)


def reward_egocentric(node: int, net: TemporalNetwork, delta: float, transmissibility: float) -> float:
    return float(reward_egocentric_all(net, delta, transmissibility)[node])


def reward_ignorant(constant: float) -> float:
    return constant


def tick_rewards(net: TemporalNetwork, delta: float, transmissibility: float,
                 ignorant_constant: float) -> TickRewards:
    """Per-style rewards for the current tick plus the population-mean blend.

    Cooperative nodes all receive the shared collective value, egocentric nodes
    their individual value, ignorant nodes the constant.
    """
    coop = reward_cooperative(net, delta, transmissibility)
    ego = reward_egocentric_all(net, delta, transmissibility)
    per_node = np.empty(net.num_nodes)
    per_node[net.styles == 0] = coop
    ego_ids = net.styles == 1
    per_node[ego_ids] = ego[ego_ids]
    per_node[net.styles == 2] = ignorant_constant
    scenario = np.sum(per_node) / net.num_nodes
    return TickRewards(cooperative=coop, egocentric=ego, per_node=per_node, scenario=scenario)
