"""Contact-driven epidemic process with a fixed-length recovery clock.

Infection propagates only through realized interactions: each interaction a
healthy node is part of (either direction) with an infected partner is one
independent transmission opportunity at the configured transmissibility.
Recovered nodes turn susceptible again unless permanent recovery is enabled.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .network import TemporalNetwork


@dataclass
class EpidemicState:
    seeds: tuple[int, ...]
    transmissibility: float
    recovery_ticks: int
    permanent_recovery: bool = False

    def validate(self) -> "EpidemicState":
        if not 0 <= self.transmissibility <= 1:
            raise ContractError("transmissibility must lie in [0, 1]")
        if self.recovery_ticks < 1:
            raise ContractError("recovery_ticks must be >= 1")
        if len(set(self.seeds)) != len(self.seeds):
            raise ContractError("seed nodes must be distinct")
        return self


def seed_epidemic(net: TemporalNetwork, state: EpidemicState) -> None:
    """Infect the seed nodes with a full recovery clock."""
    state.validate()
    for node in state.seeds:
        if not 0 <= node < net.num_nodes:
            raise ContractError(f"seed node {node} outside the network")
        net.set_health(node, True, clock=state.recovery_ticks)


def exposure_counts(interacted: np.ndarray, partner_mask: np.ndarray) -> np.ndarray:
    """Per-node count of same-tick interactions (either direction) with flagged partners."""
    incident = interacted.astype(np.int64) + interacted.astype(np.int64).T
    return incident @ partner_mask.astype(np.int64)


def infection_probabilities(net: TemporalNetwork, transmissibility: float) -> np.ndarray:
    """Per-node infection probability from the current tick's interactions.

    1 - (1 - zeta)^k with k the node's interactions with infected partners;
    infected (and immune) nodes get 0.
    """
    exposures = exposure_counts(net.interacted, net.health == 1)
    probs = 1.0 - np.power(1.0 - transmissibility, exposures.astype(float))
    probs[net.health == 1] = 0.0
    probs[net.immune] = 0.0
    return probs


def infection_probability(node: int, net: TemporalNetwork, transmissibility: float) -> float:
    return float(infection_probabilities(net, transmissibility)[node])


def spreading_risks(net: TemporalNetwork, transmissibility: float) -> np.ndarray:
    """Epidemic risk per node given the current interactions.

    Healthy nodes: their infection probability. Infected nodes: the
    probability of transmitting through at least one interaction (either
    direction) with a healthy partner.
    """
    infected = net.health == 1
    catch = infection_probabilities(net, transmissibility)
    spread_exposures = exposure_counts(net.interacted, ~infected)
    spread = 1.0 - np.power(1.0 - transmissibility, spread_exposures.astype(float))
    return np.where(infected, spread, catch)


def spreading_risk(node: int, net: TemporalNetwork, transmissibility: float) -> float:
    return float(spreading_risks(net, transmissibility)[node])


def step_epidemic(net: TemporalNetwork, state: EpidemicState, rng: np.random.Generator) -> int:
    """Advance the epidemic one tick; returns the number of new infections.

    One Bernoulli draw per node against its infection probability, then the
    recovery clocks of previously infected nodes advance; a clock reaching 0
    returns the node to susceptible (or immune) and clears the health feature.
    New infections start a full clock that begins counting next tick.
    """
    probs = infection_probabilities(net, state.transmissibility)
    draws = rng.random(net.num_nodes)
    newly_infected = np.flatnonzero((net.health == 0) & ~net.immune & (draws < probs))

    was_infected = np.flatnonzero(net.health == 1)
    net.recovery_clock[was_infected] -= 1
    for node in was_infected:
        if net.recovery_clock[node] <= 0:
            net.set_health(node, False)
            if state.permanent_recovery:
                net.immune[node] = True

    for node in newly_infected:
        net.set_health(node, True, clock=state.recovery_ticks)
    return int(newly_infected.size)
