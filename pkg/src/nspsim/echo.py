"""Point-target echo synthesis at the radar receiver.

A single far-field target at angle theta, range r_0 and radial velocity v_r
returns y[n] = alpha * exp(-j w_D n T_s) * A(theta) x[n - d], where d is the
round-trip delay snapped to the sample grid, w_D = 2 w_c v_r / c is the
Doppler shift and alpha carries the reflection magnitude and carrier phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ArrayConfig, steering_matrix
from .waveform import WaveformMatrix, delay_shift


@dataclass(frozen=True)
class TargetScene:
    """One reflecting point target."""

    angle: float                      # radians from broadside
    target_range: float               # meters (one way)
    radial_velocity: float            # m/s, positive = closing
    reflection_magnitude: float = 1.0

    def __post_init__(self) -> None:
        if not (abs(self.angle) <= np.pi / 2 + 1e-12 and np.isfinite(self.angle)):
            raise ValueError(f"angle must lie in [-pi/2, pi/2], got {self.angle}")
        if not (self.target_range > 0 and np.isfinite(self.target_range)):
            raise ValueError(f"target_range must be positive, got {self.target_range}")
        if not np.isfinite(self.radial_velocity):
            raise ValueError(f"radial_velocity must be finite, got {self.radial_velocity}")
        if not (self.reflection_magnitude > 0 and np.isfinite(self.reflection_magnitude)):
            raise ValueError(
                f"reflection_magnitude must be positive, got {self.reflection_magnitude}"
            )

    def delay_seconds(self, cfg: ArrayConfig) -> float:
        """Round-trip propagation delay 2 r_0 / c."""
        return 2.0 * self.target_range / cfg.propagation_speed

    def delay_samples(self, cfg: ArrayConfig, sample_rate: float) -> int:
        """Round-trip delay snapped to the nearest integer sample."""
        return int(round(self.delay_seconds(cfg) * sample_rate))

    def doppler_rad_per_s(self, cfg: ArrayConfig) -> float:
        """Doppler angular frequency w_D = 2 w_c v_r / c."""
        return 2.0 * cfg.angular_carrier * self.radial_velocity / cfg.propagation_speed

    def doppler_hz(self, cfg: ArrayConfig) -> float:
        return self.doppler_rad_per_s(cfg) / (2.0 * np.pi)


@dataclass(eq=False)
class ReceivedEcho:
    samples: np.ndarray  # (num_rx, num_samples) complex128
    sample_rate: float

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.ndim != 2:
            raise ValueError(f"echo samples must be 2-D, got ndim={self.samples.ndim}")
        if not (self.sample_rate > 0.0 and np.isfinite(self.sample_rate)):
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")

    @property
    def num_rx(self) -> int:
        return self.samples.shape[0]

    @property
    def num_samples(self) -> int:
        return self.samples.shape[1]


def path_loss_alpha(scene: TargetScene, cfg: ArrayConfig) -> complex:
    """Complex reflection coefficient |alpha| * exp(-j w_c tau_r)."""
    tau = scene.delay_seconds(cfg)
    return scene.reflection_magnitude * np.exp(-1j * cfg.angular_carrier * tau)


def synthesize_echo(scene: TargetScene, cfg: ArrayConfig, x: WaveformMatrix) -> ReceivedEcho:
    """Noise-free receive matrix for one target illuminated by waveform x."""
    if x.num_tx != cfg.num_tx:
        raise ValueError(f"waveform has {x.num_tx} rows but array has num_tx={cfg.num_tx}")
    d = scene.delay_samples(cfg, x.sample_rate)
    if not 0 <= d < x.num_samples:
        raise ValueError(
            f"target delay of {d} samples falls outside the {x.num_samples}-sample window"
        )
    alpha = path_loss_alpha(scene, cfg)
    a = steering_matrix(cfg, scene.angle)
    delayed = delay_shift(x, d).samples
    n = np.arange(x.num_samples)
    doppler = np.exp(-1j * scene.doppler_rad_per_s(cfg) * n * x.sample_period)
    y = alpha * (a @ delayed) * doppler[None, :]
    return ReceivedEcho(samples=y, sample_rate=x.sample_rate)


def add_noise(echo: ReceivedEcho, snr_db: float | None, seed: int) -> ReceivedEcho:
    """Add circularly-symmetric white Gaussian noise at a target SNR.

    The per-sample noise variance is chosen so that the ratio of signal energy
    to noise energy over the nonzero-signal samples equals 10^(snr_db / 10).
    snr_db = None or +inf returns an unchanged copy.
    """
    if snr_db is None or math.isinf(snr_db):
        return ReceivedEcho(samples=echo.samples.copy(), sample_rate=echo.sample_rate)
    if not np.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite or +inf, got {snr_db}")
    active = np.linalg.norm(echo.samples, axis=0) > 0.0
    signal_energy = float(np.sum(np.abs(echo.samples) ** 2))
    active_entries = echo.num_rx * int(np.count_nonzero(active))
    if active_entries == 0:
        raise ValueError("echo contains no signal energy; SNR is undefined")
    variance = signal_energy / (active_entries * 10.0 ** (snr_db / 10.0))
    rng = np.random.default_rng(seed)
    noise = np.sqrt(variance / 2.0) * (
        rng.standard_normal(echo.samples.shape) + 1j * rng.standard_normal(echo.samples.shape)
    )
    return ReceivedEcho(samples=echo.samples + noise, sample_rate=echo.sample_rate)
