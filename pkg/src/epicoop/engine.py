"""Tick/epoch simulation engine.

Each tick runs the fixed phase order: encounters -> scores -> interaction
decisions (threshold + capital) -> intensities -> bonds -> epidemic step ->
rewards. Policy decisions (genome + capital limit) happen at epoch
boundaries, once per day by default. SimEnv exposes this as a step-per-epoch
environment so the same code path serves training and evaluation.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .config import COOPERATIVE, EGOCENTRIC, IGNORANT, SimConfig, canonical_style
from .epidemic import EpidemicState, seed_epidemic, step_epidemic
from .errors import ConfigError, ContractError
from .interactions import (
    decide_interactions,
    intensity_matrix,
    score_matrix,
    threshold_vector,
    update_bonds,
)
from .network import TemporalNetwork, encounter_mask, new_network
from .policies import (
    ACTION_SIZE,
    collective_observation,
    decode_action,
    ignorant_act,
    local_views,
    observation_blocks,
    tick_rewards,
)
from .rng import split_streams

TRACE_COLUMNS = (
    "tick",
    "day",
    "interactions",
    "bonds",
    "new_infections",
    "infected_now",
    "cum_infections",
    "reward_step",
    "cum_reward",
)


@dataclass
class TickRecord:
    tick: int
    day: int
    interactions: int
    bonds: int
    new_infections: int
    infected_now: int
    reward_step: float
    reward_cooperative: float
    reward_egocentric: float
    reward_ignorant: float


class EpisodeTrace:
    """Per-tick time series of one episode plus cumulative counters."""

    def __init__(self, records: list[TickRecord], initial_infections: int):
        self.tick = np.array([r.tick for r in records], dtype=np.int64)
        self.day = np.array([r.day for r in records], dtype=np.int64)
        self.interactions = np.array([r.interactions for r in records], dtype=np.int64)
        self.bonds = np.array([r.bonds for r in records], dtype=np.int64)
        self.new_infections = np.array([r.new_infections for r in records], dtype=np.int64)
        self.infected_now = np.array([r.infected_now for r in records], dtype=np.int64)
        self.reward_step = np.array([r.reward_step for r in records])
        self.reward_cooperative = np.array([r.reward_cooperative for r in records])
        self.reward_egocentric = np.array([r.reward_egocentric for r in records])
        self.reward_ignorant = np.array([r.reward_ignorant for r in records])
        self.initial_infections = int(initial_infections)
        self.cum_infections = initial_infections + np.cumsum(self.new_infections)
        self.cum_reward = np.cumsum(self.reward_step)

    def __len__(self) -> int:
        return self.tick.size

    @property
    def final_cum_infections(self) -> int:
        return int(self.cum_infections[-1]) if len(self) else self.initial_infections

    @property
    def final_cum_reward(self) -> float:
        return float(self.cum_reward[-1]) if len(self) else 0.0

    def num_days(self) -> int:
        return int(self.day[-1]) + 1 if len(self) else 0

    def daily_mean_infected(self) -> np.ndarray:
        days = self.num_days()
        return np.array([self.infected_now[self.day == d].mean() for d in range(days)])

    def daily_last(self, values: np.ndarray) -> np.ndarray:
        days = self.num_days()
        return np.array([values[self.day == d][-1] for d in range(days)])

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)
            for i in range(len(self)):
                writer.writerow([
                    int(self.tick[i]),
                    int(self.day[i]),
                    int(self.interactions[i]),
                    int(self.bonds[i]),
                    int(self.new_infections[i]),
                    int(self.infected_now[i]),
                    int(self.cum_infections[i]),
                    repr(float(self.reward_step[i])),
                    repr(float(self.cum_reward[i])),
                ])

    @classmethod
    def read_csv(cls, path) -> "EpisodeTrace":
        with open(path, "r", newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader)
            if tuple(header) != TRACE_COLUMNS:
                raise ContractError(f"unexpected trace columns in {path}")
            rows = list(reader)
        records = []
        for row in rows:
            records.append(TickRecord(
                tick=int(row[0]), day=int(row[1]), interactions=int(row[2]),
                bonds=int(row[3]), new_infections=int(row[4]), infected_now=int(row[5]),
                reward_step=float(row[7]), reward_cooperative=0.0,
                reward_egocentric=0.0, reward_ignorant=0.0,
            ))
        initial = int(rows[0][6]) - int(rows[0][4]) if rows else 0
        return cls(records, initial)


class SimEnv:
    """Epoch-stepped environment over the tick engine.

    learner selects which style the external agent controls ("cooperative"
    controls every cooperative node through one joint action; "egocentric"
    controls the single egocentric node). With learner=None all styles run
    their built-in policies, which is the evaluation path.
    """

    def __init__(self, sim: SimConfig, styles, actors: dict | None = None,
                 learner: str | None = None, seed: int = 0):
        self.sim = sim.validate()
        self.seed = seed
        self.styles_in = list(styles)
        self.actors = dict(actors or {})
        self.learner = canonical_style(learner) if learner else None
        n = sim.num_nodes
        if len(self.styles_in) != n:
            raise ContractError(f"expected {n} styles, got {len(self.styles_in)}")
        canon = [canonical_style(s) for s in self.styles_in]
        self._style_ids = {
            style: [i for i, s in enumerate(canon) if s == style] for style in (COOPERATIVE, EGOCENTRIC, IGNORANT)
        }
        if self.learner is not None:
            if self.learner == IGNORANT:
                raise ConfigError("ignorant nodes cannot be learner-controlled")
            if not self._style_ids[self.learner]:
                raise ConfigError(f"learner style {self.learner} has no nodes in this scenario")
            if self.learner == EGOCENTRIC and len(self._style_ids[EGOCENTRIC]) != 1:
                raise ConfigError("egocentric training expects exactly one egocentric node")
        for style in (COOPERATIVE, EGOCENTRIC):
            if self._style_ids[style] and style != self.learner and self.actors.get(style) is None:
                raise ConfigError(
                    f"scenario contains {style} nodes but no trained policy was supplied; "
                    f"run `epicoop train --style {style}` first"
                )
        self.net: TemporalNetwork | None = None
        self.tick_records: list[TickRecord] = []

    # -- observation plumbing -------------------------------------------------

    @property
    def observation_dim(self) -> int:
        from .policies import BLOCK_SIZE

        if self.learner == COOPERATIVE:
            return BLOCK_SIZE * self.sim.num_nodes
        return BLOCK_SIZE * 2

    @property
    def action_dim(self) -> int:
        if self.learner == COOPERATIVE:
            return ACTION_SIZE * len(self._style_ids[COOPERATIVE])
        return ACTION_SIZE

    def _build_blocks(self) -> np.ndarray:
        return observation_blocks(self.net, self.sim.transmissibility, self._out_prev, self._in_prev)

    def _learner_obs(self, blocks: np.ndarray):
        if self.learner is None:
            return None
        if self.learner == COOPERATIVE:
            return collective_observation(blocks)
        node = self._style_ids[EGOCENTRIC][0]
        return local_views(blocks)[node].copy()

    # -- episode control -------------------------------------------------------

    def reset(self):
        self.streams = split_streams(self.seed)
        self.net = new_network(self.sim, styles=self.styles_in, feature_rng=self.streams["features"])
        self.epidemic = EpidemicState(
            seeds=tuple(self.sim.seed_nodes),
            transmissibility=self.sim.transmissibility,
            recovery_ticks=self.sim.recovery_ticks,
            permanent_recovery=self.sim.permanent_recovery,
        )
        seed_epidemic(self.net, self.epidemic)
        n = self.sim.num_nodes
        self._out_prev = np.zeros(n)
        self._in_prev = np.zeros(n)
        self._out_cur = np.zeros(n)
        self._in_cur = np.zeros(n)
        self._threshold_base = np.array(
            [self.sim.threshold_base[self.net.style_of(i)] for i in range(n)]
        )
        self._full_mask = ~np.eye(n, dtype=bool)
        self.tick_records = []
        self._learner_tick_rewards: list[float] = []
        self._blocks = self._build_blocks()
        return self._learner_obs(self._blocks)

    def _decide_epoch(self, action) -> None:
        views = local_views(self._blocks)
        n = self.sim.num_nodes
        deadzone = self.sim.action_deadzone
        for style in (COOPERATIVE, EGOCENTRIC):
            ids = self._style_ids[style]
            if not ids:
                continue
            if style == self.learner:
                arr = np.asarray(action, dtype=float)
                expected = len(ids) * ACTION_SIZE if style == COOPERATIVE else ACTION_SIZE
                if arr.shape != (expected,):
                    raise ContractError(f"expected action of length {expected}, got {arr.shape}")
                per_node = arr.reshape(len(ids), ACTION_SIZE)
            else:
                per_node = self.actors[style].forward(views[ids])
                per_node = np.atleast_2d(per_node)
            for row, node in enumerate(ids):
                genome, capital = decode_action(per_node[row], n, deadzone)
                self.net.set_genome(node, genome)
                self.net.capital_limit[node] = capital
        for node in self._style_ids[IGNORANT]:
            self.net.set_genome(node, ignorant_act(self.streams["ignorant"]))
            self.net.capital_limit[node] = n - 1 if n > 1 else 1
        self.net.capital_spent[:] = 0

    def _advance_tick(self) -> TickRecord:
        sim = self.sim
        net = self.net
        t = net.tick
        n = net.num_nodes
        if sim.encounter_prob >= 1.0:
            encounters = self._full_mask
        else:
            encounters = encounter_mask(n, sim.encounter_prob, self.streams["encounters"])
        noise = self.streams["score_noise"].normal(0.0, sim.noise_sigma, size=(n, n))
        attach_product = net.attachment * net.attachment_weight
        homo_product = net.homophily * net.homophily_weight
        scores = score_matrix(net.features, attach_product, homo_product, encounters, noise)
        thresholds = threshold_vector(net.health, self._threshold_base, sim.eta)
        interacted = decide_interactions(scores, thresholds, net.capital_spent, net.capital_limit)
        intensities = intensity_matrix(scores, thresholds, interacted, sim.b, sim.alpha)
        net.record_interactions(t, interacted, intensities)
        update_bonds(net, t)
        self._out_cur += interacted.sum(axis=1)
        self._in_cur += interacted.sum(axis=0)
        new_infections = step_epidemic(net, self.epidemic, self.streams["epidemic"])
        rewards = tick_rewards(net, sim.delta, sim.transmissibility, sim.ignorant_constant)
        net.reward_accum += rewards.per_node
        ego_ids = self._style_ids[EGOCENTRIC]
        record = TickRecord(
            tick=t,
            day=t // sim.ticks_per_day,
            interactions=int(interacted.sum()),
            bonds=int(net.bonded.sum()) // 2,
            new_infections=new_infections,
            infected_now=int(net.health.sum()),
            reward_step=float(rewards.scenario),
            reward_cooperative=float(rewards.cooperative),
            reward_egocentric=float(np.mean(rewards.egocentric[ego_ids])) if ego_ids else 0.0,
            reward_ignorant=float(sim.ignorant_constant),
        )
        self.tick_records.append(record)
        self._learner_tick_rewards.append(
            rewards.cooperative if self.learner == COOPERATIVE
            else float(rewards.egocentric[ego_ids[0]]) if self.learner == EGOCENTRIC
            else 0.0
        )
        net.tick = t + 1
        return record

    def step(self, action=None):
        """Apply one epoch of decisions, run its ticks, return (obs, reward, done, info).

        The reward is the learner's mean per-tick reward over the epoch (None
        without a learner).
        """
        if self.net is None:
            raise ContractError("step called before reset")
        if self.learner is not None and action is None:
            raise ContractError("learner environments require an action each epoch")
        self._learner_tick_rewards: list[float] = []
        self._decide_epoch(action)
        total = self.sim.total_ticks
        epoch_records = []
        for _ in range(self.sim.epoch_ticks):
            if self.net.tick >= total:
                break
            epoch_records.append(self._advance_tick())
        done = self.net.tick >= total
        self._out_prev, self._out_cur = self._out_cur, np.zeros(self.sim.num_nodes)
        self._in_prev, self._in_cur = self._in_cur, np.zeros(self.sim.num_nodes)
        self._blocks = self._build_blocks()
        obs = self._learner_obs(self._blocks)
        reward = float(np.mean(self._learner_tick_rewards)) if self.learner and self._learner_tick_rewards else None
        info = {"records": epoch_records}
        return obs, reward, done, info


def run_episode(sim: SimConfig, styles, actors: dict | None = None, seed: int = 0) -> EpisodeTrace:
    """Run one full scenario episode with built-in policies and collect the trace."""
    env = SimEnv(sim, styles, actors=actors, learner=None, seed=seed)
    env.reset()
    done = False
    while not done:
        _, _, done, _ = env.step(None)
    return EpisodeTrace(env.tick_records, initial_infections=len(sim.seed_nodes))
