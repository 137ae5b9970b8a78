"""Monte Carlo harness: repeated channel draws, selection, estimation, reports.

Each trial draws a fresh interference channel set, picks the best and worst
channels by projection loss, and runs the three single-parameter estimators
on echoes of the original waveform and of both projected waveforms.  Results
land in three objective-surface CSVs plus trials.json / summary.json, all
byte-deterministic in the master seed.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

import numpy as np

from .channels import sample_channel_set, perturb_csi
from .config import ScenarioConfig
from .echo import add_noise, synthesize_echo
from .estimator import DegenerateDenominatorError, EstimationGrid
from .estimator import estimate_angle, estimate_delay, estimate_doppler
from .projection import project_waveform
from .selection import NoUsableNullSpaceError, select_channels
from .waveform import WaveformMatrix, generate_orthogonal, generate_random

CASES = ("original", "nsp_best", "nsp_worst")
AXES = ("angle", "delay", "doppler")

# Seed fan-out: the master seed never feeds a generator directly.  Each
# concern (and, where it applies, each trial) gets its own stream seeded by
# SeedSequence([master, concern_id, trial]), so toggling noise on or off can
# never shift the channel draws of a later trial.
_CONCERNS = {"waveform": 0, "channels": 1, "noise": 2, "csi": 3}


def derive_seed(master: int, concern: str, trial: int | None = None,
                override: int | None = None) -> int:
    """Per-concern (and per-trial) integer seed derived from the master seed."""
    if concern not in _CONCERNS:
        raise ValueError(f"unknown concern {concern!r}")
    entropy: List[int] = [override] if override is not None else [master, _CONCERNS[concern]]
    if trial is not None:
        entropy.append(trial)
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


@dataclass(eq=False)
class RunReport:
    """Everything one run produced, before any files are written."""

    config: ScenarioConfig
    truth: Dict[str, float]
    trials: List[dict]
    aggregates: Dict[str, dict]
    diagnostics: Dict[str, object]
    surfaces: Dict[str, dict]          # axis -> {"grid": csv-unit values, "mean": {case: arr}}
    timing: Dict[str, float]
    per_trial_surfaces: List[dict] = field(default_factory=list)


def build_waveform(cfg: ScenarioConfig) -> WaveformMatrix:
    """Transmit waveform for a scenario; fixed across trials."""
    spec = cfg.waveform
    seed = derive_seed(cfg.seed, "waveform", override=spec.seed)
    gen = generate_orthogonal if spec.family == "orthogonal" else generate_random
    return gen(cfg.array.num_tx, spec.num_samples, seed, sample_rate=spec.bandwidth)


def _interference_residual(h: np.ndarray, projected: np.ndarray, x: np.ndarray) -> float:
    return float(np.linalg.norm(h @ projected) / (np.linalg.norm(h) * np.linalg.norm(x)))


def _estimate_all(y, xref, truth, grid: EstimationGrid, arr) -> dict:
    """Run the three single-axis estimators against one echo/reference pair."""
    res_angle = estimate_angle(y, xref, truth["delay_samples"], truth["doppler_hz"], grid, arr)
    res_delay = estimate_delay(y, xref, truth["angle_rad"], truth["doppler_hz"], grid, arr)
    res_doppler = estimate_doppler(y, xref, truth["angle_rad"], truth["delay_samples"], grid, arr)
    return {"angle": res_angle, "delay": res_delay, "doppler": res_doppler}


def run_scenario(cfg: ScenarioConfig, fast_grids: bool = False,
                 keep_per_trial_surfaces: bool = False) -> RunReport:
    """Execute every trial of a scenario and aggregate the results."""
    t_start = time.perf_counter()
    arr = cfg.array
    x = build_waveform(cfg)

    scene = cfg.scene
    delay_samples = scene.delay_samples(arr, x.sample_rate)
    truth = {
        "angle_rad": scene.angle,
        "angle_deg": float(np.degrees(scene.angle)),
        "delay_samples": delay_samples,
        "delay_seconds": delay_samples / x.sample_rate,
        "doppler_hz": scene.doppler_hz(arr),
    }
    grid = cfg.grids.build(x.num_samples, delay_samples, fast=fast_grids)

    # CSV grid columns use presentation units: degrees, seconds, hertz.
    surface_grids = {
        "angle": np.degrees(grid.angle_grid),
        "delay": grid.delay_grid / x.sample_rate,
        "doppler": grid.doppler_grid.copy(),
    }
    sums = {ax: {c: np.zeros(surface_grids[ax].size) for c in CASES} for ax in AXES}
    counts = {ax: {c: np.zeros(surface_grids[ax].size) for c in CASES} for ax in AXES}

    trials: List[dict] = []
    per_trial_surfaces: List[dict] = []
    snr_db = None if cfg.noise.noiseless else cfg.noise.snr_db

    for t in range(cfg.trials):
        record: dict = {"trial": t, "errors": [], "estimates": {}}
        channel_seed = derive_seed(cfg.seed, "channels", trial=t, override=cfg.channels.seed)
        true_set = sample_channel_set(arr.num_tx, cfg.channels.rx_antennas_per_bs, channel_seed)
        if cfg.channels.csi_error_std > 0.0:
            csi_seed = derive_seed(cfg.seed, "csi", trial=t)
            known_set = perturb_csi(true_set, cfg.channels.csi_error_std, csi_seed)
        else:
            known_set = true_set

        references: dict = {"original": x}
        try:
            sel = select_channels(x, known_set)
            record["losses"] = [float(v) for v in sel.losses]
            record["best_bs_id"] = sel.best_index + 1
            record["worst_bs_id"] = sel.worst_index + 1
            record["best_rank"] = sel.best_projector.channel_rank
            record["worst_rank"] = sel.worst_projector.channel_rank
            record["best_null_dim"] = sel.best_projector.null_dim
            record["worst_null_dim"] = sel.worst_projector.null_dim
            px_best = project_waveform(sel.best_projector, x)
            px_worst = project_waveform(sel.worst_projector, x)
            references["nsp_best"] = px_best
            references["nsp_worst"] = px_worst
            record["interference_residual_best"] = _interference_residual(
                true_set[sel.best_index].matrix, px_best.samples, x.samples)
            record["interference_residual_worst"] = _interference_residual(
                true_set[sel.worst_index].matrix, px_worst.samples, x.samples)
        except NoUsableNullSpaceError as exc:
            record["errors"].append(f"selection: {exc}")

        noise_seed = derive_seed(cfg.seed, "noise", trial=t, override=cfg.noise.seed)
        trial_surfaces: dict = {ax: {} for ax in AXES}
        for case in CASES:
            if case not in references:
                continue
            ref = references[case]
            try:
                echo = synthesize_echo(scene, arr, ref)
                echo = add_noise(echo, snr_db, noise_seed)
                results = _estimate_all(echo, ref, truth, grid, arr)
            except (DegenerateDenominatorError, ValueError) as exc:
                record["errors"].append(f"{case}: {exc}")
                continue
            est = {
                "angle_deg": float(np.degrees(results["angle"].estimate)),
                "delay_samples": int(results["delay"].estimate),
                "delay_seconds": results["delay"].estimate / x.sample_rate,
                "doppler_hz": float(results["doppler"].estimate),
            }
            est["angle_abs_error_deg"] = abs(est["angle_deg"] - truth["angle_deg"])
            est["delay_abs_error_samples"] = abs(est["delay_samples"] - truth["delay_samples"])
            est["doppler_abs_error_hz"] = abs(est["doppler_hz"] - truth["doppler_hz"])
            for ax in AXES:
                est[f"peak_objective_{ax}"] = results[ax].peak_value
                obj = results[ax].objective
                valid = np.isfinite(obj)
                sums[ax][case][valid] += obj[valid]
                counts[ax][case] += valid
                if keep_per_trial_surfaces:
                    # guard-excluded points serialize as JSON null, not NaN
                    trial_surfaces[ax][case] = [
                        float(v) if f else None for v, f in zip(obj, valid)
                    ]
            record["estimates"][case] = est
        trials.append(record)
        if keep_per_trial_surfaces:
            per_trial_surfaces.append(trial_surfaces)

    surfaces = {}
    for ax in AXES:
        mean = {}
        for case in CASES:
            with np.errstate(invalid="ignore"):
                mean[case] = np.where(counts[ax][case] > 0,
                                      sums[ax][case] / np.maximum(counts[ax][case], 1),
                                      np.nan)
        surfaces[ax] = {"grid": surface_grids[ax], "mean": mean}

    report = RunReport(
        config=cfg,
        truth={k: v for k, v in truth.items() if k != "angle_rad"},
        trials=trials,
        aggregates=_aggregate(trials),
        diagnostics=_diagnose(trials),
        surfaces=surfaces,
        timing={},
        per_trial_surfaces=per_trial_surfaces,
    )
    elapsed = time.perf_counter() - t_start
    report.timing = {"total_seconds": elapsed,
                     "seconds_per_trial": elapsed / max(cfg.trials, 1)}
    return report


def _aggregate(trials: List[dict]) -> Dict[str, dict]:
    """Per-case mean/median absolute errors and mean peak objectives."""
    metrics = ("angle_abs_error_deg", "delay_abs_error_samples", "doppler_abs_error_hz",
               "peak_objective_angle", "peak_objective_delay", "peak_objective_doppler")
    out: Dict[str, dict] = {}
    for case in CASES:
        case_agg: dict = {"valid_trials": 0}
        values = {m: [] for m in metrics}
        for rec in trials:
            est = rec["estimates"].get(case)
            if est is None:
                continue
            case_agg["valid_trials"] += 1
            for m in metrics:
                values[m].append(est[m])
        for m in metrics:
            stat = "mean" if m.startswith("peak") else None
            if values[m]:
                case_agg[f"mean_{m}"] = float(np.mean(values[m]))
                if stat is None:
                    case_agg[f"median_{m}"] = float(statistics.median(values[m]))
            else:
                case_agg[f"mean_{m}"] = None
                if stat is None:
                    case_agg[f"median_{m}"] = None
        out[case] = case_agg
    return out


def _diagnose(trials: List[dict]) -> Dict[str, object]:
    best_hist: Dict[str, int] = {}
    residuals = []
    error_count = 0
    for rec in trials:
        if "best_bs_id" in rec:
            key = str(rec["best_bs_id"])
            best_hist[key] = best_hist.get(key, 0) + 1
        if "interference_residual_best" in rec:
            residuals.append(rec["interference_residual_best"])
        error_count += len(rec["errors"])
    return {
        "best_bs_histogram": best_hist,
        "max_interference_residual_best": max(residuals) if residuals else None,
        "total_recorded_errors": error_count,
    }


def _fmt(v: float) -> str:
    """CSV cell: 12 significant digits, 'nan' for excluded points."""
    return format(v, ".12g")


def emit_reports(report: RunReport, out_dir: str | Path) -> Dict[str, Path]:
    """Write the three surface CSVs plus trials.json and summary.json.

    Files are UTF-8 with LF line endings; identical configs and seeds yield
    byte-identical CSVs.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: Dict[str, Path] = {}
    for ax in AXES:
        path = out / f"surfaces_{ax}.csv"
        grid = report.surfaces[ax]["grid"]
        mean = report.surfaces[ax]["mean"]
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("grid_value,obj_original,obj_nsp_best,obj_nsp_worst\n")
            for i in range(grid.size):
                row = [grid[i]] + [mean[c][i] for c in CASES]
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        paths[f"surfaces_{ax}"] = path

    trials_doc: dict = {"trials": report.trials}
    if report.per_trial_surfaces:
        trials_doc["per_trial_surfaces"] = report.per_trial_surfaces
    with open(out / "trials.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(trials_doc, fh, indent=1, allow_nan=False)
        fh.write("\n")
    paths["trials"] = out / "trials.json"

    summary = {
        "config": report.config.to_doc(),
        "truth": report.truth,
        "cases": list(CASES),
        "aggregates": report.aggregates,
        "diagnostics": report.diagnostics,
        "timing": report.timing,
    }
    with open(out / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, indent=1, allow_nan=False)
        fh.write("\n")
    paths["summary"] = out / "summary.json"
    return paths


def dump_waveform(x: WaveformMatrix, path: str | Path) -> Path:
    """Binary export of the transmit waveform (exact float64 values)."""
    path = Path(path)
    if path.suffix != ".npz":
        path = Path(str(path) + ".npz")
    np.savez(path, real=x.samples.real, imag=x.samples.imag,
             sample_rate=np.array(x.sample_rate))
    return path
