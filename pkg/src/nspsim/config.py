"""Scenario configuration: a JSON document mapped onto validated dataclasses.

Unknown keys are rejected and every complaint carries the dotted field path,
so a typo in a config file fails loudly instead of silently using a default.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .echo import TargetScene
from .estimator import EstimationGrid
from .geometry import ArrayConfig


class ConfigError(ValueError):
    """Scenario document failed validation; message lists field paths."""


@dataclass(frozen=True)
class WaveformSpec:
    family: str          # "orthogonal" | "random"
    bandwidth: float     # Hz; also the sample rate (one sample per chip)
    num_samples: int
    seed: int | None = None  # None -> derived from the master seed

    @property
    def duration(self) -> float:
        return self.num_samples / self.bandwidth


@dataclass(frozen=True)
class ChannelSpec:
    rx_antennas_per_bs: tuple
    csi_error_std: float = 0.0
    seed: int | None = None

    @property
    def num_bs(self) -> int:
        return len(self.rx_antennas_per_bs)


@dataclass(frozen=True)
class NoiseSpec:
    noiseless: bool = True
    snr_db: float | None = None
    seed: int | None = None


@dataclass(frozen=True)
class GridSpec:
    angle_start_deg: float = -90.0
    angle_stop_deg: float = 90.0
    angle_step_deg: float = 0.1
    delay_window: int | None = None   # None -> sweep every sample
    doppler_start_hz: float = 0.0
    doppler_stop_hz: float = 100e3
    doppler_step_hz: float = 100.0

    def build(self, num_samples: int, true_delay: int, fast: bool = False) -> EstimationGrid:
        """Materialize search grids; fast mode windows the delay sweep to
        +-50 samples around the true delay unless a window is already set."""
        angle = _uniform_grid("grids.angle", self.angle_start_deg,
                              self.angle_stop_deg, self.angle_step_deg)
        doppler = _uniform_grid("grids.doppler", self.doppler_start_hz,
                                self.doppler_stop_hz, self.doppler_step_hz)
        window = self.delay_window
        if window is None and fast:
            window = 50
        if window is None:
            delay = np.arange(num_samples)
        else:
            lo = max(0, int(true_delay) - window)
            hi = min(num_samples - 1, int(true_delay) + window)
            delay = np.arange(lo, hi + 1)
        return EstimationGrid(angle_grid=np.deg2rad(angle), delay_grid=delay,
                              doppler_grid=doppler)


@dataclass(frozen=True)
class ScenarioConfig:
    array: ArrayConfig
    waveform: WaveformSpec
    channels: ChannelSpec
    scene: TargetScene
    noise: NoiseSpec
    grids: GridSpec
    trials: int
    seed: int
    output_dir: str | None = None

    def to_doc(self) -> dict:
        """Canonical JSON-ready echo of the resolved configuration."""
        return {
            "array": {
                "num_tx": self.array.num_tx,
                "num_rx": self.array.num_rx,
                "element_spacing": self.array.element_spacing,
                "carrier_freq": self.array.carrier_freq,
                "propagation_speed": self.array.propagation_speed,
            },
            "waveform": {
                "family": self.waveform.family,
                "bandwidth": self.waveform.bandwidth,
                "num_samples": self.waveform.num_samples,
                "seed": self.waveform.seed,
            },
            "channels": {
                "rx_antennas_per_bs": list(self.channels.rx_antennas_per_bs),
                "csi_error_std": self.channels.csi_error_std,
                "seed": self.channels.seed,
            },
            "scene": {
                "angle_deg": math.degrees(self.scene.angle),
                "target_range": self.scene.target_range,
                "radial_velocity": self.scene.radial_velocity,
                "reflection_magnitude": self.scene.reflection_magnitude,
            },
            "noise": {
                "noiseless": self.noise.noiseless,
                "snr_db": self.noise.snr_db,
                "seed": self.noise.seed,
            },
            "grids": {
                "angle_start_deg": self.grids.angle_start_deg,
                "angle_stop_deg": self.grids.angle_stop_deg,
                "angle_step_deg": self.grids.angle_step_deg,
                "delay_window": self.grids.delay_window,
                "doppler_start_hz": self.grids.doppler_start_hz,
                "doppler_stop_hz": self.grids.doppler_stop_hz,
                "doppler_step_hz": self.grids.doppler_step_hz,
            },
            "trials": self.trials,
            "seed": self.seed,
            "output_dir": self.output_dir,
        }


def _uniform_grid(path: str, start: float, stop: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ConfigError(f"{path}_step must be positive, got {step}")
    if stop <= start:
        raise ConfigError(f"{path}_stop must exceed {path}_start")
    span = (stop - start) / step
    npts = int(round(span)) + 1
    if abs(span - round(span)) > 1e-9:
        raise ConfigError(f"{path}: step {step} does not evenly divide [{start}, {stop}]")
    return np.linspace(start, stop, npts)


class _Reader:
    """Pull typed values out of one config section, tracking unknown keys."""

    def __init__(self, doc: dict, path: str, errors: list):
        self.doc = doc
        self.path = path
        self.errors = errors
        self.seen = set()

    def _fail(self, key: str, msg: str) -> None:
        self.errors.append(f"{self.path}.{key}: {msg}" if self.path else f"{key}: {msg}")

    def get(self, key: str, kind: str, required: bool = False, default: Any = None,
            nullable: bool = False) -> Any:
        self.seen.add(key)
        if key not in self.doc:
            if required:
                self._fail(key, "missing required field")
            return default
        v = self.doc[key]
        if v is None:
            if nullable:
                return default
            self._fail(key, "must not be null")
            return default
        if kind == "int":
            if isinstance(v, bool) or not isinstance(v, int):
                self._fail(key, f"must be an integer, got {v!r}")
                return default
            return v
        if kind == "number":
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                self._fail(key, f"must be a finite number, got {v!r}")
                return default
            return float(v)
        if kind == "bool":
            if not isinstance(v, bool):
                self._fail(key, f"must be a boolean, got {v!r}")
                return default
            return v
        if kind == "str":
            if not isinstance(v, str):
                self._fail(key, f"must be a string, got {v!r}")
                return default
            return v
        if kind == "int_list":
            if (not isinstance(v, list) or not v
                    or any(isinstance(e, bool) or not isinstance(e, int) for e in v)):
                self._fail(key, f"must be a non-empty list of integers, got {v!r}")
                return default
            return list(v)
        raise AssertionError(f"unknown field kind {kind}")

    def reject_unknown(self) -> None:
        for key in self.doc:
            if key not in self.seen:
                where = f"{self.path}.{key}" if self.path else key
                self.errors.append(f"{where}: unknown field")


def _section(doc: dict, name: str, errors: list, required: bool) -> dict | None:
    if name not in doc:
        if required:
            errors.append(f"{name}: missing required section")
        return None
    v = doc[name]
    if not isinstance(v, dict):
        errors.append(f"{name}: must be an object")
        return None
    return v


def from_dict(doc: dict) -> ScenarioConfig:
    """Validate a parsed JSON document and build a ScenarioConfig.

    Raises ConfigError listing every problem found, one line per field.
    """
    if not isinstance(doc, dict):
        raise ConfigError("top level: config must be a JSON object")
    errors: list = []
    top = _Reader(doc, "", errors)
    for name in ("array", "waveform", "channels", "scene", "noise", "grids"):
        top.seen.add(name)

    array_cfg = None
    sec = _section(doc, "array", errors, required=True)
    if sec is not None:
        before = len(errors)
        r = _Reader(sec, "array", errors)
        num_tx = r.get("num_tx", "int", required=True)
        num_rx = r.get("num_rx", "int", required=True)
        spacing = r.get("element_spacing", "number", required=True)
        carrier = r.get("carrier_freq", "number", required=True)
        speed = r.get("propagation_speed", "number", default=3.0e8)
        r.reject_unknown()
        if len(errors) == before:
            try:
                array_cfg = ArrayConfig(num_tx=num_tx, num_rx=num_rx,
                                        element_spacing=spacing, carrier_freq=carrier,
                                        propagation_speed=speed)
            except ValueError as exc:
                errors.append(f"array: {exc}")

    waveform_spec = None
    sec = _section(doc, "waveform", errors, required=True)
    if sec is not None:
        before = len(errors)
        r = _Reader(sec, "waveform", errors)
        family = r.get("family", "str", default="orthogonal")
        bandwidth = r.get("bandwidth", "number", required=True)
        num_samples = r.get("num_samples", "int", nullable=True)
        duration = r.get("duration", "number", nullable=True)
        seed = r.get("seed", "int", nullable=True)
        r.reject_unknown()
        if family not in ("orthogonal", "random"):
            errors.append(f"waveform.family: must be 'orthogonal' or 'random', got {family!r}")
        if bandwidth is not None and bandwidth <= 0:
            errors.append(f"waveform.bandwidth: must be positive, got {bandwidth}")
        if (num_samples is None) == (duration is None):
            errors.append("waveform: exactly one of num_samples or duration is required")
        elif num_samples is None and bandwidth:
            if duration <= 0:
                errors.append(f"waveform.duration: must be positive, got {duration}")
            else:
                num_samples = int(round(bandwidth * duration))
        if num_samples is not None and num_samples < 1:
            errors.append(f"waveform.num_samples: must be >= 1, got {num_samples}")
        if len(errors) == before and num_samples is not None:
            waveform_spec = WaveformSpec(family=family, bandwidth=bandwidth,
                                         num_samples=num_samples, seed=seed)

    channel_spec = None
    sec = _section(doc, "channels", errors, required=False)
    if sec is None:
        channel_spec = ChannelSpec(rx_antennas_per_bs=(2, 4, 6, 8))
    else:
        before = len(errors)
        r = _Reader(sec, "channels", errors)
        counts = r.get("rx_antennas_per_bs", "int_list", default=[2, 4, 6, 8])
        num_bs = r.get("num_bs", "int", nullable=True)
        csi = r.get("csi_error_std", "number", default=0.0)
        seed = r.get("seed", "int", nullable=True)
        r.reject_unknown()
        if counts is not None and any(c < 1 for c in counts):
            errors.append(f"channels.rx_antennas_per_bs: counts must be >= 1, got {counts}")
        if num_bs is not None and counts is not None and num_bs != len(counts):
            errors.append(
                f"channels.num_bs: {num_bs} disagrees with rx_antennas_per_bs length {len(counts)}"
            )
        if csi is not None and csi < 0:
            errors.append(f"channels.csi_error_std: must be >= 0, got {csi}")
        if len(errors) == before and counts is not None:
            channel_spec = ChannelSpec(rx_antennas_per_bs=tuple(counts),
                                       csi_error_std=csi, seed=seed)

    scene = None
    sec = _section(doc, "scene", errors, required=True)
    if sec is not None:
        before = len(errors)
        r = _Reader(sec, "scene", errors)
        angle_deg = r.get("angle_deg", "number", default=0.0)
        target_range = r.get("target_range", "number", required=True)
        velocity = r.get("radial_velocity", "number", required=True)
        magnitude = r.get("reflection_magnitude", "number", default=1.0)
        r.reject_unknown()
        if len(errors) == before:
            try:
                scene = TargetScene(angle=math.radians(angle_deg), target_range=target_range,
                                    radial_velocity=velocity, reflection_magnitude=magnitude)
            except ValueError as exc:
                errors.append(f"scene: {exc}")

    noise_spec = None
    sec = _section(doc, "noise", errors, required=False)
    if sec is None:
        noise_spec = NoiseSpec()
    else:
        before = len(errors)
        r = _Reader(sec, "noise", errors)
        noiseless = r.get("noiseless", "bool", default=False)
        snr_db = r.get("snr_db", "number", nullable=True)
        seed = r.get("seed", "int", nullable=True)
        r.reject_unknown()
        if not noiseless and snr_db is None:
            errors.append("noise: snr_db is required unless noiseless is true")
        if len(errors) == before:
            noise_spec = NoiseSpec(noiseless=noiseless, snr_db=snr_db, seed=seed)

    grid_spec = None
    sec = _section(doc, "grids", errors, required=False)
    if sec is None:
        grid_spec = GridSpec()
    else:
        before = len(errors)
        r = _Reader(sec, "grids", errors)
        kw = {}
        for key in ("angle_start_deg", "angle_stop_deg", "angle_step_deg",
                    "doppler_start_hz", "doppler_stop_hz", "doppler_step_hz"):
            v = r.get(key, "number")
            if v is not None:
                kw[key] = v
        window = r.get("delay_window", "int", nullable=True)
        if window is not None:
            if window < 0:
                errors.append(f"grids.delay_window: must be >= 0, got {window}")
            else:
                kw["delay_window"] = window
        r.reject_unknown()
        if len(errors) == before:
            grid_spec = GridSpec(**kw)
            try:
                grid_spec.build(num_samples=2, true_delay=0)
            except (ConfigError, ValueError) as exc:
                errors.append(f"grids: {exc}")
                grid_spec = None

    trials = top.get("trials", "int", required=True)
    if trials is not None and trials < 1:
        errors.append(f"trials: must be >= 1, got {trials}")
    seed = top.get("seed", "int", required=True)
    if seed is not None and seed < 0:
        errors.append(f"seed: must be >= 0, got {seed}")
    output_dir = top.get("output_dir", "str", nullable=True)
    top.reject_unknown()

    if errors:
        raise ConfigError("\n".join(errors))
    return ScenarioConfig(array=array_cfg, waveform=waveform_spec, channels=channel_spec,
                          scene=scene, noise=noise_spec, grids=grid_spec,
                          trials=trials, seed=seed, output_dir=output_dir)


def load_config(path: str | Path) -> ScenarioConfig:
    """Read and validate a scenario JSON file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: malformed JSON: {exc}") from exc
    return from_dict(doc)


def bundled_config_names() -> list:
    """Names of the scenario files shipped inside the package."""
    root = resources.files("nspsim") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_bundled_config(name: str) -> ScenarioConfig:
    """Load a shipped scenario by bare name, e.g. 'reference'."""
    res = resources.files("nspsim") / "configs" / f"{name}.json"
    try:
        text = res.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError) as exc:
        raise ConfigError(
            f"no bundled config named {name!r}; available: {', '.join(bundled_config_names())}"
        ) from exc
    return from_dict(json.loads(text))
