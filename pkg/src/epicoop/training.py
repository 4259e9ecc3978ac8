"""Training loops: style-specific environments around the TD3 learner.

The collective mind trains with every node cooperative and a joint action;
the egocentric policy trains as the single selfish node among cooperative
nodes driven by an already-trained collective policy. Both write a training
curve CSV (episode, env_steps, mean_return, critic_loss, actor_loss) and a
policy file.
"""
from __future__ import annotations

import csv
from collections import deque

import numpy as np

from .config import (
    COOPERATIVE,
    EGOCENTRIC,
    NUM_FEATURES,
    SimConfig,
    Td3Config,
    canonical_style,
    default_td3_config,
)
from .engine import SimEnv
from .errors import ConfigError
from .policies import ACTION_SIZE, BLOCK_SIZE
from .policy_io import load_policy, save_policy
from .replay import ReplayBuffer
from .rng import split_streams
from .td3 import Td3Agent, identity_view, make_collective_view

CURVE_COLUMNS = ("episode", "env_steps", "mean_return", "critic_loss", "actor_loss")


def build_training_env(style: str, sim: SimConfig, seed: int, coop_actor=None) -> SimEnv:
    style = canonical_style(style)
    n = sim.num_nodes
    if style == COOPERATIVE:
        styles = [COOPERATIVE] * n
        return SimEnv(sim, styles, actors={}, learner=COOPERATIVE, seed=seed)
    if style == EGOCENTRIC:
        if coop_actor is None:
            raise ConfigError(
                "egocentric training needs a trained cooperative policy for the other nodes; "
                "run `epicoop train --style cooperative` first"
            )
        styles = [EGOCENTRIC] + [COOPERATIVE] * (n - 1)
        return SimEnv(sim, styles, actors={COOPERATIVE: coop_actor}, learner=EGOCENTRIC, seed=seed)
    raise ConfigError("only cooperative and egocentric styles are trainable")


def make_agent(style: str, sim: SimConfig, cfg: Td3Config, init_rng) -> Td3Agent:
    style = canonical_style(style)
    if style == COOPERATIVE:
        n = sim.num_nodes
        return Td3Agent(
            obs_dim=BLOCK_SIZE * n,
            num_controlled=n,
            local_dim=2 * BLOCK_SIZE,
            action_size=ACTION_SIZE,
            cfg=cfg,
            view_fn=make_collective_view(n),
            init_rng=init_rng,
        )
    return Td3Agent(
        obs_dim=2 * BLOCK_SIZE,
        num_controlled=1,
        local_dim=2 * BLOCK_SIZE,
        action_size=ACTION_SIZE,
        cfg=cfg,
        view_fn=identity_view,
        init_rng=init_rng,
    )


def write_curve_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CURVE_COLUMNS)
        for row in rows:
            writer.writerow([
                int(row["episode"]),
                int(row["env_steps"]),
                repr(float(row["mean_return"])),
                repr(float(row["critic_loss"])),
                repr(float(row["actor_loss"])),
            ])


def train_policy(style: str, sim: SimConfig, cfg: Td3Config | None, seed: int,
                 policy_path, curve_path=None, coop_policy_path=None,
                 progress=None) -> Td3Agent:
    """Train one style and persist the actor; returns the learner."""
    style = canonical_style(style)
    sim.validate()
    if cfg is None:
        cfg = default_td3_config(style)
    cfg.validate()

    coop_actor = None
    if style == EGOCENTRIC:
        if coop_policy_path is None:
            raise ConfigError("egocentric training requires --coop-policy")
        coop_actor, _ = load_policy(coop_policy_path)

    streams = split_streams(seed)
    env = build_training_env(style, sim, seed, coop_actor)
    agent = make_agent(style, sim, cfg, streams["net_init"])
    buffer = ReplayBuffer(cfg.buffer_capacity, env.observation_dim, env.action_dim)

    explore = streams["exploration"]
    replay = streams["replay"]
    target_noise = streams["target_noise"]

    rows = []
    recent_returns: deque[float] = deque(maxlen=10)
    episode = 0
    episode_return = 0.0
    episode_critic: list[float] = []
    episode_actor: list[float] = []
    obs = env.reset()

    for step in range(1, cfg.total_steps + 1):
        if step <= cfg.start_steps:
            action = explore.uniform(-1.0, 1.0, size=env.action_dim)
        else:
            action = agent.select_action(obs, explore)
        next_obs, reward, done, _ = env.step(action)
        buffer.add(obs, action, reward, next_obs, 1.0 if done else 0.0)
        episode_return += reward
        obs = next_obs

        diag = agent.update(buffer, replay, target_noise)
        if diag is not None:
            episode_critic.append(diag.critic_loss)
            if diag.actor_loss is not None:
                episode_actor.append(diag.actor_loss)

        if done:
            episode += 1
            recent_returns.append(episode_return)
            rows.append({
                "episode": episode,
                "env_steps": step,
                "mean_return": float(np.mean(recent_returns)),
                "critic_loss": float(np.mean(episode_critic)) if episode_critic else 0.0,
                "actor_loss": float(np.mean(episode_actor)) if episode_actor else 0.0,
            })
            if progress is not None:
                progress(rows[-1])
            episode_return = 0.0
            episode_critic = []
            episode_actor = []
            obs = env.reset()

    save_policy(policy_path, agent.actor, kind=style, num_features=NUM_FEATURES,
                num_nodes=sim.num_nodes)
    if curve_path is not None:
        write_curve_csv(curve_path, rows)
    return agent
