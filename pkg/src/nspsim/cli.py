"""Command-line front end: run scenarios, validate configs, export channels."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .channels import channel_set_to_doc, sample_channel_set
from .config import (ConfigError, ScenarioConfig, bundled_config_names,
                     load_bundled_config, load_config)
from .harness import build_waveform, derive_seed, dump_waveform, emit_reports, run_scenario


def _resolve_config(ref: str) -> ScenarioConfig:
    """Accept either a path to a JSON file or the bare name of a bundled scenario."""
    if Path(ref).exists():
        return load_config(ref)
    if "/" not in ref and "\\" not in ref and not ref.endswith(".json"):
        return load_bundled_config(ref)
    raise ConfigError(f"config file not found: {ref}")


def _apply_overrides(cfg: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    updates: dict = {}
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError(f"--trials must be >= 1, got {args.trials}")
        updates["trials"] = args.trials
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {args.seed}")
        updates["seed"] = args.seed
    if args.out is not None:
        updates["output_dir"] = args.out
    if args.noiseless:
        updates["noise"] = dataclasses.replace(cfg.noise, noiseless=True)
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _apply_overrides(_resolve_config(args.config), args)
    if cfg.output_dir is None:
        print("error: no output directory (set output_dir in the config or pass --out)",
              file=sys.stderr)
        return 2
    report = run_scenario(cfg, fast_grids=args.fast_grids,
                          keep_per_trial_surfaces=args.per_trial_surfaces)
    paths = emit_reports(report, cfg.output_dir)
    if args.dump_waveform:
        paths["waveform"] = dump_waveform(build_waveform(cfg), Path(cfg.output_dir) / "waveform")
    print(f"completed {cfg.trials} trial(s) in {report.timing['total_seconds']:.2f} s")
    for case, agg in report.aggregates.items():
        print(
            f"  {case:10s} median |angle err| = {_show(agg['median_angle_abs_error_deg'])} deg, "
            f"median |delay err| = {_show(agg['median_delay_abs_error_samples'])} samples, "
            f"median |doppler err| = {_show(agg['median_doppler_abs_error_hz'])} Hz"
        )
    resid = report.diagnostics["max_interference_residual_best"]
    if resid is not None:
        print(f"  max interference residual on selected channel: {resid:.3e}")
    for name in sorted(paths):
        print(f"  wrote {paths[name]}")
    return 0


def _show(v) -> str:
    return "n/a" if v is None else f"{v:.6g}"


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args.config)
    doc = cfg.to_doc()
    print("config is valid")
    print(f"  array: {doc['array']['num_tx']} tx / {doc['array']['num_rx']} rx, "
          f"carrier {doc['array']['carrier_freq'] / 1e9:.3f} GHz")
    print(f"  waveform: {doc['waveform']['family']}, {doc['waveform']['num_samples']} samples "
          f"at {doc['waveform']['bandwidth'] / 1e6:.1f} MHz")
    print(f"  base stations: rx antennas {doc['channels']['rx_antennas_per_bs']}")
    print(f"  trials: {doc['trials']}, master seed: {doc['seed']}")
    return 0


def _cmd_export_channels(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args.config)
    seed = derive_seed(cfg.seed, "channels", trial=args.trial, override=cfg.channels.seed)
    cset = sample_channel_set(cfg.array.num_tx, cfg.channels.rx_antennas_per_bs, seed)
    doc = channel_set_to_doc(cset)
    doc["trial"] = args.trial
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print(f"wrote {len(cset)} channel(s) for trial {args.trial} to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nspsim",
        description="Monte Carlo simulator for null-space projected MIMO radar waveforms "
                    "sharing spectrum with cellular base stations.",
        epilog=f"bundled scenarios: {', '.join(bundled_config_names())}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and write surface CSVs and reports")
    p_run.add_argument("config", help="path to a scenario JSON file, or a bundled scenario name")
    p_run.add_argument("--trials", type=int, default=None, help="override the trial count")
    p_run.add_argument("--seed", type=int, default=None, help="override the master seed")
    p_run.add_argument("--out", default=None, help="override the output directory")
    p_run.add_argument("--noiseless", action="store_true", help="disable receiver noise")
    p_run.add_argument("--fast-grids", action="store_true",
                       help="window the delay sweep to +-50 samples around the true delay")
    p_run.add_argument("--per-trial-surfaces", action="store_true",
                       help="embed per-trial objective surfaces in trials.json (large)")
    p_run.add_argument("--dump-waveform", action="store_true",
                       help="also write the transmit waveform as waveform.npz")
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="validate a scenario file and print a summary")
    p_val.add_argument("config", help="path to a scenario JSON file, or a bundled scenario name")
    p_val.set_defaults(func=_cmd_validate)

    p_exp = sub.add_parser("export-channels",
                           help="write one trial's interference channel set as JSON")
    p_exp.add_argument("config", help="path to a scenario JSON file, or a bundled scenario name")
    p_exp.add_argument("out", help="output JSON path")
    p_exp.add_argument("--trial", type=int, default=0, help="trial index (default 0)")
    p_exp.set_defaults(func=_cmd_export_channels)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"invalid config:\n{exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
