"""Command-line entry points.

Subcommands: train, simulate, sweep, plot, verify, dump-config. Output paths
default to $EPICOOP_OUT (falling back to ./out).
"""
from __future__ import annotations

import argparse
import os
import sys

from .config import (
    COOPERATIVE,
    EGOCENTRIC,
    NUM_FEATURES,
    SimConfig,
    canonical_style,
    default_td3_config,
    dump_config_text,
    experiment_config_from_mapping,
    load_json_config,
    sim_config_from_mapping,
    td3_config_from_mapping,
)
from .errors import ConfigError
from .experiments import (
    load_actors,
    run_cell,
    run_sweep,
    scenario_name,
    styles_needing_policies,
    scenario_styles,
    trace_filename,
    verify_outputs,
    write_summary_csv,
)
from .training import train_policy


def output_root() -> str:
    return os.environ.get("EPICOOP_OUT", "out")


def _cmd_train(args) -> int:
    style = canonical_style(args.style)
    mapping = load_json_config(args.config) if args.config else {}
    sim = sim_config_from_mapping(mapping.get("sim", {}))
    td3 = td3_config_from_mapping(mapping.get("td3", {})) if "td3" in mapping else default_td3_config(style)
    out_dir = args.out or output_root()
    os.makedirs(out_dir, exist_ok=True)
    policy_path = os.path.join(out_dir, f"{style}_seed{args.seed}.policy")
    curve_path = os.path.join(out_dir, f"{style}_seed{args.seed}_curve.csv")

    def progress(row):
        if args.quiet:
            return
        print(f"episode {row['episode']:4d}  steps {row['env_steps']:6d}  "
              f"mean_return {row['mean_return']:.4f}  critic_loss {row['critic_loss']:.5f}")

    train_policy(style, sim, td3, args.seed, policy_path, curve_path,
                 coop_policy_path=args.coop_policy, progress=progress)
    print(f"policy written to {policy_path}")
    print(f"training curve written to {curve_path}")
    return 0


def _cmd_simulate(args) -> int:
    mapping = load_json_config(args.scenario)
    spec = mapping.get("scenario")
    if not isinstance(spec, dict):
        raise ConfigError("scenario file needs a 'scenario' object")
    sim = sim_config_from_mapping(mapping.get("sim", {}))
    policy_paths = mapping.get("policies", {})
    styles = scenario_styles(spec, sim.num_nodes, seed=args.seed)
    actors = load_actors(policy_paths, styles_needing_policies(styles))
    out_dir = args.out or mapping.get("output_dir") or output_root()
    traces_dir = os.path.join(out_dir, "traces")
    os.makedirs(traces_dir, exist_ok=True)
    row, trace = run_cell(sim, spec, sim.transmissibility, sim.recovery_days, args.seed, actors)
    path = os.path.join(traces_dir, trace_filename(
        scenario_name(spec), sim.transmissibility, sim.recovery_days, args.seed))
    trace.write_csv(path)
    write_summary_csv(os.path.join(out_dir, "summary.csv"), [row])
    print(f"trace written to {path}")
    print(f"final cumulative infections: {row['final_cum_infections']}")
    print(f"final cumulative reward: {row['final_cum_reward']:.4f}")
    return 0


def _cmd_sweep(args) -> int:
    mapping = load_json_config(args.config)
    config = experiment_config_from_mapping(mapping)
    if args.jobs:
        config.jobs = args.jobs
    if not config.output_dir:
        config.output_dir = output_root()
    rows = run_sweep(config, progress=None if args.quiet else _sweep_progress)
    print(f"{len(rows)} cells written under {config.output_dir}")
    return 0


def _sweep_progress(row):
    print(f"{row['scenario']:28s} zeta={row['zeta']:.2f} rt={row['recovery_days']:g} "
          f"seed={row['seed']} infections={row['final_cum_infections']} "
          f"reward={row['final_cum_reward']:.2f}")


def _cmd_plot(args) -> int:
    from .plots import emit_plots

    paths = emit_plots(args.input, args.out)
    for path in paths:
        print(path)
    return 0


def _cmd_verify(args) -> int:
    problems = verify_outputs(args.input)
    if problems:
        for problem in problems:
            print(problem, file=sys.stderr)
        print(f"verification failed: {len(problems)} problem(s)", file=sys.stderr)
        return 1
    print("verification ok")
    return 0


def _cmd_dump_config(args) -> int:
    sys.stdout.write(dump_config_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epicoop",
        description="Temporal social-network epidemic simulator with learning agents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a policy (cooperative first, then egocentric)")
    p_train.add_argument("--style", required=True, help="cop/cooperative or ego/egocentric")
    p_train.add_argument("--config", help="JSON file with optional 'sim' and 'td3' sections")
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--out", help="output directory (default $EPICOOP_OUT or ./out)")
    p_train.add_argument("--coop-policy", help="trained cooperative policy (needed for --style ego)")
    p_train.add_argument("--quiet", action="store_true")
    p_train.set_defaults(func=_cmd_train)

    p_sim = sub.add_parser("simulate", help="run one scenario episode and write its trace")
    p_sim.add_argument("--scenario", required=True, help="JSON scenario file")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", help="output directory")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run scenarios across the severity grid")
    p_sweep.add_argument("--config", required=True, help="JSON experiment file")
    p_sweep.add_argument("--jobs", type=int, default=0, help="parallel workers")
    p_sweep.add_argument("--quiet", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_plot = sub.add_parser("plot", help="render figures from sweep outputs")
    p_plot.add_argument("--in", dest="input", required=True)
    p_plot.add_argument("--out", help="plots directory (default <in>/plots)")
    p_plot.set_defaults(func=_cmd_plot)

    p_verify = sub.add_parser("verify", help="recompute summary finals from traces")
    p_verify.add_argument("--in", dest="input", required=True)
    p_verify.set_defaults(func=_cmd_verify)

    p_dump = sub.add_parser("dump-config", help="print every effective default")
    p_dump.set_defaults(func=_cmd_dump_config)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
