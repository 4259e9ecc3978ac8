"""Pairwise interaction kernel: scores, thresholds, intensities, bonds.

Scalar functions define the per-pair contracts (and are what the brute-force
tests recompute); the *_matrix functions are the vectorized equivalents used
by the engine. Both paths keep the same floating-point association so they
agree bitwise: products are taken as feature_term * (preference * weight).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .network import NodeState, TemporalNetwork


def clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass
class ScoreBreakdown:
    homophily: float
    pref_attach: float
    noise: float
    total: float


def homophily_score(features_i, features_j, homophily, homophily_weight) -> float:
    """Similarity-preference component: sum_k |fi_k - fj_k| * (h_k * w_k), clamped to [0, 1].

    A +1 preference rewards dissimilarity on that feature; -1 penalizes it.
    """
    features_i = np.asarray(features_i, dtype=float)
    features_j = np.asarray(features_j, dtype=float)
    homophily = np.asarray(homophily, dtype=float)
    homophily_weight = np.asarray(homophily_weight, dtype=float)
    if not features_i.shape == features_j.shape == homophily.shape == homophily_weight.shape:
        raise ContractError("homophily_score arguments must share one length")
    raw = 0.0
    for k in range(features_i.shape[0]):
        raw += abs(features_i[k] - features_j[k]) * (homophily[k] * homophily_weight[k])
    return clamp01(raw)


def pref_attach_score(features_j, attachment, attachment_weight) -> float:
    """Attachment component toward the target: sum_k fj_k * (p_k * w_k), clamped to [0, 1]."""
    features_j = np.asarray(features_j, dtype=float)
    attachment = np.asarray(attachment, dtype=float)
    attachment_weight = np.asarray(attachment_weight, dtype=float)
    if not features_j.shape == attachment.shape == attachment_weight.shape:
        raise ContractError("pref_attach_score arguments must share one length")
    raw = 0.0
    for k in range(features_j.shape[0]):
        raw += features_j[k] * (attachment[k] * attachment_weight[k])
    return clamp01(raw)


def interaction_score(features_i, features_j, genome, encountered: bool, noise: float) -> ScoreBreakdown:
    """Total directed score i->j: 0.5 * (homophily + attachment) + noise, or all zeros
    when the pair did not encounter this tick. The caller draws the noise."""
    if not encountered:
        return ScoreBreakdown(0.0, 0.0, 0.0, 0.0)
    pi_h = homophily_score(features_i, features_j, genome.homophily, genome.homophily_weight)
    pi_p = pref_attach_score(features_j, genome.attachment, genome.attachment_weight)
    return ScoreBreakdown(pi_h, pi_p, noise, 0.5 * (pi_h + pi_p) + noise)


def threshold(health: int, base: float, eta: float) -> float:
    """Interaction threshold: base for healthy nodes, base * eta^health otherwise."""
    if base < 0:
        raise ContractError("threshold base must be >= 0")
    return float(eta) ** int(health) * base


def decide_interaction(score: float, thresh: float, node: NodeState) -> int:
    """1 iff the score strictly exceeds the threshold and capital remains.

    Increments node.capital_spent on a decision of 1.
    """
    if score > thresh and node.capital_spent < node.capital_limit:
        node.capital_spent += 1
        return 1
    return 0


def interaction_intensity(score: float, thresh: float, interacted: int, b: float, alpha: float) -> float:
    """Intensity of a realized interaction: b + alpha * (score - threshold); 0 if none."""
    if not interacted:
        return 0.0
    return b + alpha * (score - thresh)


def bond_intensity(history_ij, history_ji) -> float:
    """Half the sum of each direction's mean interaction intensity over the window.

    Histories are (tick, intensity) pairs already restricted to the window.
    Returns 0 when either direction has no interaction (no bond can exist).
    """
    if not history_ij or not history_ji:
        return 0.0
    mean_ij = sum(w for _, w in history_ij) / len(history_ij)
    mean_ji = sum(w for _, w in history_ji) / len(history_ji)
    return 0.5 * (mean_ij + mean_ji)


# -- vectorized kernels used by the engine ------------------------------------


def score_matrix(features, attach_product, homo_product, encounters, noise) -> np.ndarray:
    """All ordered-pair scores at one tick.

    attach_product/homo_product are preference*weight (N, F) matrices; rows
    index the evaluating node. Non-encountered pairs (incl. the diagonal)
    score exactly 0.
    """
    absdiff = np.abs(features[:, None, :] - features[None, :, :])
    pi_h = np.clip(np.einsum("ijk,ik->ij", absdiff, homo_product), 0.0, 1.0)
    # einsum rather than @: BLAS may fuse multiply-adds, breaking bitwise
    # agreement with the scalar contract functions.
    pi_p = np.clip(np.einsum("ik,jk->ij", attach_product, features), 0.0, 1.0)
    return np.where(encounters, 0.5 * (pi_h + pi_p) + noise, 0.0)


def threshold_vector(health, base_per_node, eta) -> np.ndarray:
    return np.asarray(base_per_node, dtype=float) * np.power(float(eta), health.astype(np.int64))


def decide_interactions(scores, thresholds, capital_spent, capital_limit) -> np.ndarray:
    """Row i interacts with the first eligible targets, in target order, until
    its remaining capital is exhausted. Returns the 0/1 interaction matrix and
    updates capital_spent in place."""
    eligible = scores > thresholds[:, None]
    remaining = (capital_limit - capital_spent)[:, None]
    taken = np.cumsum(eligible, axis=1)
    decided = eligible & (taken <= remaining)
    capital_spent += decided.sum(axis=1)
    return decided.astype(np.uint8)


def intensity_matrix(scores, thresholds, interacted, b, alpha) -> np.ndarray:
    return np.where(interacted.astype(bool), b + alpha * (scores - thresholds[:, None]), 0.0)


def update_bonds(net: TemporalNetwork, tick: int) -> None:
    """Recompute bond flags and intensities from the interaction window.

    A pair bonds at the tick iff one direction interacted now and the reverse
    direction interacted anywhere in the window. Bond intensity averages each
    direction's interaction intensities over the window, then halves the sum;
    both matrices come out exactly symmetric.
    """
    current = net.interacted.astype(bool)
    window_any = net.window_counts() > 0
    bonded = (window_any & current.T) | (window_any.T & current)
    counts = net.window_counts()
    sums = net.window_intensity_sums()
    means = np.divide(sums, counts, out=np.zeros_like(sums), where=counts > 0)
    intensity = 0.5 * (means + means.T)
    net.bonded = bonded.astype(np.uint8)
    net.bond_intensity = np.where(bonded, intensity, 0.0)
