"""Configuration for simulation, learning and experiments.

Defaults reproduce the headline setup: a 30-node network run for 100 days at
30 ticks per day, interaction thresholds of 0.20 doubled while infected,
intensity b + alpha * (score - threshold), a transmissibility of 0.10 per
interaction and a 5-day recovery clock.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from .errors import ConfigError

# Node feature layout: column 0 mirrors the health flag, column 1 is a static
# trait drawn once per node. The scoring formulas are defined over exactly
# these two features.
NUM_FEATURES = 2

COOPERATIVE = "cooperative"
EGOCENTRIC = "egocentric"
IGNORANT = "ignorant"
STYLES = (COOPERATIVE, EGOCENTRIC, IGNORANT)

_STYLE_ALIASES = {
    "cooperative": COOPERATIVE,
    "cop": COOPERATIVE,
    "egocentric": EGOCENTRIC,
    "ego": EGOCENTRIC,
    "ignorant": IGNORANT,
    "ign": IGNORANT,
}


def canonical_style(name: str) -> str:
    """Map a style name or its short alias (cop/ego/ign) to the canonical name."""
    try:
        return _STYLE_ALIASES[name.lower()]
    except KeyError:
        raise ConfigError(f"unknown agent style {name!r}; expected one of {sorted(_STYLE_ALIASES)}")


def _default_thresholds() -> dict[str, float]:
    return {style: 0.20 for style in STYLES}


@dataclass
class SimConfig:
    """Simulation parameters. All fields are also valid config-file keys."""

    num_nodes: int = 30
    episode_days: int = 100
    ticks_per_day: int = 30
    bond_window_ticks: int = 1
    # Interaction threshold per style for healthy nodes; infected nodes use
    # threshold * eta.
    threshold_base: dict[str, float] = field(default_factory=_default_thresholds)
    eta: float = 2.0
    # Interaction intensity is b + alpha * (score - threshold).
    b: float = 0.25
    alpha: float = 0.125
    # Reward depreciation applied to infected nodes' bond value.
    delta: float = 0.5
    # Std-dev of the gaussian perturbation added to every pair score.
    noise_sigma: float = 0.01
    # Constant per-tick reward paid to ignorant nodes.
    ignorant_constant: float = 0.0
    # Ticks between policy decisions; 0 means one decision per day.
    rl_epoch_ticks: int = 0
    # Probability that an ordered pair encounters at a tick (1.0 = full mixing).
    encounter_prob: float = 1.0
    # Infection probability per interaction with an infected partner.
    transmissibility: float = 0.10
    # Days an infected node stays infected before turning susceptible again.
    recovery_days: float = 5.0
    seed_nodes: tuple[int, ...] = (0,)
    # When true, recovered nodes become immune instead of susceptible.
    permanent_recovery: bool = False
    # Action entries with |a| below this decode to a disabled preference.
    action_deadzone: float = 1.0 / 3.0

    @property
    def total_ticks(self) -> int:
        return self.episode_days * self.ticks_per_day

    @property
    def epoch_ticks(self) -> int:
        return self.rl_epoch_ticks if self.rl_epoch_ticks > 0 else self.ticks_per_day

    @property
    def recovery_ticks(self) -> int:
        return int(round(self.recovery_days * self.ticks_per_day))

    def validate(self) -> "SimConfig":
        if self.num_nodes < 1:
            raise ConfigError("num_nodes must be >= 1")
        if self.episode_days < 1 or self.ticks_per_day < 1:
            raise ConfigError("episode_days and ticks_per_day must be >= 1")
        if self.bond_window_ticks < 0:
            raise ConfigError("bond_window_ticks must be >= 0")
        if set(self.threshold_base) != set(STYLES):
            raise ConfigError(f"threshold_base must define exactly the styles {STYLES}")
        if any(v < 0 for v in self.threshold_base.values()):
            raise ConfigError("interaction thresholds must be >= 0")
        if self.eta < 1:
            raise ConfigError("eta must be >= 1 (infected nodes never get an easier threshold)")
        if self.b <= 0 or self.alpha < 0:
            raise ConfigError("b must be > 0 and alpha >= 0")
        if not 0 < self.delta <= 1:
            raise ConfigError("delta must lie in (0, 1]")
        if self.noise_sigma < 0:
            raise ConfigError("noise_sigma must be >= 0")
        if self.rl_epoch_ticks < 0:
            raise ConfigError("rl_epoch_ticks must be >= 0 (0 selects daily decisions)")
        if not 0 <= self.encounter_prob <= 1:
            raise ConfigError("encounter_prob must lie in [0, 1]")
        if not 0 <= self.transmissibility <= 1:
            raise ConfigError("transmissibility must lie in [0, 1]")
        if self.recovery_days <= 0:
            raise ConfigError("recovery_days must be > 0")
        if len(set(self.seed_nodes)) != len(self.seed_nodes):
            raise ConfigError("seed_nodes must be distinct")
        for node in self.seed_nodes:
            if not 0 <= node < self.num_nodes:
                raise ConfigError(f"seed node {node} outside [0, {self.num_nodes})")
        if not 0 <= self.action_deadzone < 1:
            raise ConfigError("action_deadzone must lie in [0, 1)")
        return self


@dataclass
class Td3Config:
    """Learner hyperparameters shared by both trainable styles."""

    learning_rate: float = 0.01
    batch_size: int = 256
    total_steps: int = 50000
    discount: float = 0.99
    policy_noise: float = 0.2
    target_noise_clip: float = 0.5
    exploration_noise: float = 0.1
    polyak_tau: float = 0.005
    policy_delay: int = 2
    buffer_capacity: int = 100_000
    hidden_sizes: tuple[int, ...] = (64, 64)
    # Uniform-random actions are taken for this many initial env steps so the
    # learner sees non-degenerate genomes despite the action deadzone.
    start_steps: int = 1000
    # Plain SGD by default; adaptive moments can be switched on explicitly.
    use_adam: bool = False

    def validate(self) -> "Td3Config":
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be > 0")
        if self.batch_size < 1:
            raise ConfigError("batch_size must be >= 1")
        if self.total_steps < 1:
            raise ConfigError("total_steps must be >= 1")
        if not 0 <= self.discount < 1:
            raise ConfigError("discount must lie in [0, 1)")
        if self.policy_noise < 0 or self.exploration_noise < 0 or self.target_noise_clip < 0:
            raise ConfigError("noise scales must be >= 0")
        if not 0 < self.polyak_tau <= 1:
            raise ConfigError("polyak_tau must lie in (0, 1]")
        if self.policy_delay < 1:
            raise ConfigError("policy_delay must be >= 1")
        if self.buffer_capacity < self.batch_size:
            raise ConfigError("buffer_capacity must be >= batch_size")
        if not self.hidden_sizes or any(h < 1 for h in self.hidden_sizes):
            raise ConfigError("hidden_sizes must be non-empty positive ints")
        if self.start_steps < 0:
            raise ConfigError("start_steps must be >= 0")
        return self


# Per-style training budgets.
TOTAL_STEPS_BY_STYLE = {COOPERATIVE: 50000, EGOCENTRIC: 20000}


def default_td3_config(style: str) -> Td3Config:
    """Td3Config with the published per-style step budget."""
    style = canonical_style(style)
    if style == IGNORANT:
        raise ConfigError("ignorant agents are not trained")
    return Td3Config(total_steps=TOTAL_STEPS_BY_STYLE[style])


@dataclass
class ExperimentConfig:
    """Sweep layout: which scenarios to run over which severity grid."""

    # Scenario descriptors: {"kind": "single", "style": ...} or
    # {"kind": "mixed", "rider_kind": ..., "rider_count": k}.
    scenarios: tuple[dict, ...] = (
        {"kind": "single", "style": COOPERATIVE},
        {"kind": "single", "style": EGOCENTRIC},
        {"kind": "single", "style": IGNORANT},
    )
    zeta_grid: tuple[float, ...] = (0.05, 0.10, 0.15, 0.20)
    recovery_grid: tuple[float, ...] = (5, 10, 15, 20)
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)
    rider_counts: tuple[int, ...] = (1, 2, 3, 5, 10)
    # Free riders occupy the lowest node ids (including the seed node) unless
    # random placement is requested.
    random_rider_placement: bool = False
    emit_plots: bool = True
    jobs: int = 1
    output_dir: str = ""
    sim: SimConfig = field(default_factory=SimConfig)
    policies: dict[str, str] = field(default_factory=dict)

    def validate(self) -> "ExperimentConfig":
        self.sim.validate()
        if not self.scenarios:
            raise ConfigError("at least one scenario is required")
        for spec in self.scenarios:
            kind = spec.get("kind")
            if kind == "single":
                canonical_style(spec.get("style", ""))
            elif kind == "mixed":
                rider = canonical_style(spec.get("rider_kind", ""))
                if rider == COOPERATIVE:
                    raise ConfigError("rider_kind must be egocentric or ignorant")
            else:
                raise ConfigError(f"scenario kind must be 'single' or 'mixed', got {kind!r}")
        if not self.zeta_grid or not self.recovery_grid or not self.seeds:
            raise ConfigError("zeta_grid, recovery_grid and seeds must be non-empty")
        if any(not 0 <= z <= 1 for z in self.zeta_grid):
            raise ConfigError("zeta_grid entries must lie in [0, 1]")
        if any(r <= 0 for r in self.recovery_grid):
            raise ConfigError("recovery_grid entries must be > 0")
        if any(k < 0 or k > self.sim.num_nodes for k in self.rider_counts):
            raise ConfigError("rider_counts must lie in [0, num_nodes]")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        return self


_TUPLE_FIELDS = {"seed_nodes", "hidden_sizes", "zeta_grid", "recovery_grid", "seeds", "rider_counts", "scenarios"}


def _from_mapping(cls, mapping: dict, where: str):
    known = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(mapping) - set(known)
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")
    kwargs = {}
    for key, value in mapping.items():
        if key == "sim" and isinstance(value, dict):
            value = _from_mapping(SimConfig, value, "sim")
        elif key in _TUPLE_FIELDS and isinstance(value, list):
            value = tuple(value)
        kwargs[key] = value
    return cls(**kwargs)


def sim_config_from_mapping(mapping: dict) -> SimConfig:
    return _from_mapping(SimConfig, mapping, "simulation config").validate()


def td3_config_from_mapping(mapping: dict) -> Td3Config:
    return _from_mapping(Td3Config, mapping, "learner config").validate()


def experiment_config_from_mapping(mapping: dict) -> ExperimentConfig:
    return _from_mapping(ExperimentConfig, mapping, "experiment config").validate()


def load_json_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return data


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def dump_config_text() -> str:
    """Render every effective default as stable text (used by `dump-config`)."""
    lines = ["[simulation]"]
    sim = SimConfig()
    for f in dataclasses.fields(sim):
        lines.append(f"{f.name} = {_fmt(getattr(sim, f.name))}")
    for style in (COOPERATIVE, EGOCENTRIC):
        lines.append("")
        lines.append(f"[td3.{style}]")
        cfg = default_td3_config(style)
        for f in dataclasses.fields(cfg):
            lines.append(f"{f.name} = {_fmt(getattr(cfg, f.name))}")
    return "\n".join(lines) + "\n"
