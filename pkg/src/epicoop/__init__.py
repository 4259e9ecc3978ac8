"""epicoop: temporal directed social networks under an epidemic, with
cooperative, egocentric and ignorant agents trained by deterministic-policy
reinforcement learning."""

from .config import (
    COOPERATIVE,
    EGOCENTRIC,
    IGNORANT,
    NUM_FEATURES,
    ExperimentConfig,
    SimConfig,
    Td3Config,
    canonical_style,
    default_td3_config,
    dump_config_text,
)
from .engine import EpisodeTrace, SimEnv, run_episode
from .epidemic import (
    EpidemicState,
    infection_probability,
    seed_epidemic,
    spreading_risk,
    step_epidemic,
)
from .errors import ConfigError, ContractError
from .experiments import run_cell, run_sweep, scenario_styles, verify_outputs
from .interactions import (
    bond_intensity,
    decide_interaction,
    homophily_score,
    interaction_intensity,
    interaction_score,
    pref_attach_score,
    threshold,
    update_bonds,
)
from .nets import DenseNet, polyak_update
from .network import PreferenceGenome, TemporalNetwork, encounter_set, new_network
from .policies import (
    collective_observation,
    decode_action,
    encode_genome,
    ignorant_act,
    local_views,
    observation_blocks,
    reward_cooperative,
    reward_egocentric,
    reward_ignorant,
)
from .policy_io import load_policy, save_policy
from .replay import ReplayBuffer
from .td3 import Td3Agent
from .training import train_policy

__version__ = "0.1.0"

__all__ = [
    "COOPERATIVE", "EGOCENTRIC", "IGNORANT", "NUM_FEATURES",
    "ConfigError", "ContractError",
    "SimConfig", "Td3Config", "ExperimentConfig",
    "canonical_style", "default_td3_config", "dump_config_text",
    "PreferenceGenome", "TemporalNetwork", "new_network", "encounter_set",
    "homophily_score", "pref_attach_score", "interaction_score", "threshold",
    "decide_interaction", "interaction_intensity", "bond_intensity", "update_bonds",
    "EpidemicState", "seed_epidemic", "infection_probability", "spreading_risk",
    "step_epidemic",
    "observation_blocks", "collective_observation", "local_views",
    "decode_action", "encode_genome", "ignorant_act",
    "reward_cooperative", "reward_egocentric", "reward_ignorant",
    "DenseNet", "polyak_update", "ReplayBuffer", "Td3Agent",
    "save_policy", "load_policy", "train_policy",
    "SimEnv", "EpisodeTrace", "run_episode",
    "run_cell", "run_sweep", "scenario_styles", "verify_outputs",
]
