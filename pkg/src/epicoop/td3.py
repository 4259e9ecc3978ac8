"""Twin-delayed deterministic policy gradient on the hand-written nets.

One actor maps a 12-dim local view to the per-node action; scenarios with
several controlled nodes share its parameters and the twin critics score the
full observation together with the joint action. Updates follow the published
recipe: clipped-noise target smoothing, twin-minimum targets, delayed actor
and target updates via polyak averaging.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Td3Config
from .errors import ContractError
from .nets import AdamState, DenseNet, polyak_update, sgd_step


def identity_view(obs_batch: np.ndarray) -> np.ndarray:
    """View mapping for a single controlled node: the observation is the view."""
    return obs_batch[:, None, :]


def make_collective_view(num_nodes: int):
    """View mapping for the collective mind: per-node block + mean of others."""
    from .policies import local_views_from_flat

    def view(obs_batch: np.ndarray) -> np.ndarray:
        return local_views_from_flat(obs_batch, num_nodes)

    return view


@dataclass
class UpdateDiagnostics:
    critic_loss: float
    actor_loss: float | None
    target_mean: float


class Td3Agent:
    """Actor/critic bundle plus the update rule."""

    def __init__(self, obs_dim: int, num_controlled: int, local_dim: int, action_size: int,
                 cfg: Td3Config, view_fn, init_rng: np.random.Generator):
        cfg.validate()
        self.cfg = cfg
        self.obs_dim = obs_dim
        self.num_controlled = num_controlled
        self.local_dim = local_dim
        self.action_size = action_size
        self.joint_action_dim = num_controlled * action_size
        self.view_fn = view_fn

        hidden = list(cfg.hidden_sizes)
        self.actor = DenseNet([local_dim, *hidden, action_size], "tanh", init_rng)
        critic_in = obs_dim + self.joint_action_dim
        self.critic1 = DenseNet([critic_in, *hidden, 1], "identity", init_rng)
        self.critic2 = DenseNet([critic_in, *hidden, 1], "identity", init_rng)
        self.actor_target = self.actor.copy()
        self.critic1_target = self.critic1.copy()
        self.critic2_target = self.critic2.copy()
        self.update_count = 0
        if cfg.use_adam:
            self._opt = {
                id(self.actor): AdamState(self.actor),
                id(self.critic1): AdamState(self.critic1),
                id(self.critic2): AdamState(self.critic2),
            }
        else:
            self._opt = None

    def _optimize(self, net: DenseNet, grads) -> None:
        if self._opt is None:
            sgd_step(net, grads, self.cfg.learning_rate)
        else:
            self._opt[id(net)].step(net, grads, self.cfg.learning_rate)

    # -- acting ----------------------------------------------------------------

    def _joint(self, actor: DenseNet, obs_batch: np.ndarray) -> np.ndarray:
        batch = obs_batch.shape[0]
        views = self.view_fn(obs_batch)
        if views.shape != (batch, self.num_controlled, self.local_dim):
            raise ContractError("view function returned an unexpected shape")
        flat = views.reshape(batch * self.num_controlled, self.local_dim)
        actions = actor.forward(flat)
        return actions.reshape(batch, self.joint_action_dim)

    def policy_action(self, obs: np.ndarray) -> np.ndarray:
        """Deterministic joint action for one observation."""
        return self._joint(self.actor, np.asarray(obs, dtype=float)[None, :])[0]

    def select_action(self, obs: np.ndarray, rng: np.random.Generator,
                      sigma: float | None = None) -> np.ndarray:
        """Exploratory action: deterministic policy plus clipped gaussian noise."""
        if sigma is None:
            sigma = self.cfg.exploration_noise
        action = self.policy_action(obs)
        if sigma > 0:
            action = action + rng.normal(0.0, sigma, size=action.shape)
        return np.clip(action, -1.0, 1.0)

    # -- learning ----------------------------------------------------------------

    def compute_targets(self, rewards, dones, next_obs, noise_rng) -> np.ndarray:
        """Twin-minimum bootstrap targets with clipped target-policy smoothing."""
        cfg = self.cfg
        next_joint = self._joint(self.actor_target, next_obs)
        noise = noise_rng.normal(0.0, cfg.policy_noise, size=next_joint.shape)
        noise = np.clip(noise, -cfg.target_noise_clip, cfg.target_noise_clip)
        smoothed = np.clip(next_joint + noise, -1.0, 1.0)
        target_in = np.concatenate([next_obs, smoothed], axis=1)
        q1 = self.critic1_target.forward(target_in)[:, 0]
        q2 = self.critic2_target.forward(target_in)[:, 0]
        return rewards + cfg.discount * (1.0 - dones) * np.minimum(q1, q2)

    def update(self, buffer, replay_rng: np.random.Generator,
               noise_rng: np.random.Generator) -> UpdateDiagnostics | None:
        """One gradient step; no-op (returns None) while the buffer is underfilled."""
        cfg = self.cfg
        if len(buffer) < cfg.batch_size:
            return None
        obs, actions, rewards, next_obs, dones = buffer.sample(cfg.batch_size, replay_rng)
        targets = self.compute_targets(rewards, dones, next_obs, noise_rng)

        batch = cfg.batch_size
        critic_in = np.concatenate([obs, actions], axis=1)
        critic_loss = 0.0
        for critic in (self.critic1, self.critic2):
            q = critic.forward(critic_in)[:, 0]
            err = q - targets
            critic_loss += float(np.mean(err ** 2))
            grads, _ = critic.backward((2.0 / batch) * err[:, None])
            self._optimize(critic, grads)
        critic_loss /= 2.0

        self.update_count += 1
        actor_loss = None
        if self.update_count % cfg.policy_delay == 0:
            joint = self._joint(self.actor, obs)
            actor_in = np.concatenate([obs, joint], axis=1)
            q = self.critic1.forward(actor_in)
            actor_loss = float(-np.mean(q))
            _, dinput = self.critic1.backward(np.full((batch, 1), -1.0 / batch))
            daction = dinput[:, self.obs_dim:]
            flat = daction.reshape(batch * self.num_controlled, self.action_size)
            grads, _ = self.actor.backward(flat)
            self._optimize(self.actor, grads)
            polyak_update(self.actor_target, self.actor, cfg.polyak_tau)
            polyak_update(self.critic1_target, self.critic1, cfg.polyak_tau)
            polyak_update(self.critic2_target, self.critic2, cfg.polyak_tau)
        return UpdateDiagnostics(
            critic_loss=critic_loss,
            actor_loss=actor_loss,
            target_mean=float(np.mean(targets)),
        )
