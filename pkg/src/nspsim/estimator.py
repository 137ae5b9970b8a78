"""Maximum-likelihood grid estimation of target angle, delay and Doppler.

The receive matrix is correlated against the delayed, Doppler-compensated
reference waveform to form the cross-ambiguity matrix

    E(d, f) = T_s * sum_n y[n] xref[:, n-d]^H exp(+j 2 pi f n T_s)

and the objective at steering angle theta is

    |a_R(theta)^H E a_T(theta)^*|^2 / (M_R * a_T(theta)^H R^T a_T(theta))

with R the reference-waveform correlation matrix.  One parameter is swept at
a time over a finite grid while the other two are held at their true values;
the estimate is the grid argmax, ties broken toward the smallest grid index.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .echo import ReceivedEcho
from .geometry import ArrayConfig, rx_steering, rx_steering_bank, tx_steering, tx_steering_bank
from .waveform import WaveformMatrix, correlation_matrix, delay_shift

# Grid points where the transmit-side energy a_T^H R^T a_T falls below
# DENOM_GUARD * trace(R) are excluded: the objective there divides energy the
# projected waveform no longer radiates.
DENOM_GUARD = 1e-12


class DegenerateDenominatorError(ValueError):
    """The waveform radiates no energy along the probed steering direction."""


@dataclass(eq=False)
class EstimationGrid:
    """Search grids for the three target parameters."""

    angle_grid: np.ndarray    # radians, strictly increasing
    delay_grid: np.ndarray    # integer sample indices, strictly increasing
    doppler_grid: np.ndarray  # Hz, strictly increasing

    def __post_init__(self) -> None:
        self.angle_grid = np.asarray(self.angle_grid, dtype=float)
        self.delay_grid = np.asarray(self.delay_grid, dtype=np.int64)
        self.doppler_grid = np.asarray(self.doppler_grid, dtype=float)
        for name in ("angle_grid", "delay_grid", "doppler_grid"):
            g = getattr(self, name)
            if g.ndim != 1 or g.size == 0:
                raise ValueError(f"{name} must be a non-empty 1-D grid")
            if np.any(np.diff(g.astype(float)) <= 0):
                raise ValueError(f"{name} must be strictly increasing")
        if np.any(np.abs(self.angle_grid) > np.pi / 2 + 1e-12):
            raise ValueError("angle_grid must lie within [-pi/2, pi/2]")
        if self.delay_grid[0] < 0:
            raise ValueError("delay_grid entries must be nonnegative")


def default_grid(num_samples: int, true_delay: int | None = None,
                 fast: bool = False) -> EstimationGrid:
    """Default search grids: angle -90..90 deg in 0.1 deg steps, Doppler
    0..100 kHz in 100 Hz steps, delay over every sample (or, in fast mode,
    +-50 samples around the true delay)."""
    angle = np.deg2rad(np.linspace(-90.0, 90.0, 1801))
    doppler = np.linspace(0.0, 100e3, 1001)
    if fast:
        if true_delay is None:
            raise ValueError("fast grids need the true delay to center the delay window")
        lo = max(0, int(true_delay) - 50)
        hi = min(num_samples - 1, int(true_delay) + 50)
        delay = np.arange(lo, hi + 1)
    else:
        delay = np.arange(num_samples)
    return EstimationGrid(angle_grid=angle, delay_grid=delay, doppler_grid=doppler)


@dataclass(eq=False)
class EstimationResult:
    """Objective surface over one swept parameter and its argmax."""

    axis: str                 # "angle" | "delay" | "doppler"
    grid: np.ndarray
    objective: np.ndarray     # NaN where the denominator guard excluded a point
    peak_index: int
    excluded: np.ndarray      # indices of excluded grid points

    @property
    def estimate(self):
        return self.grid[self.peak_index].item()

    @property
    def peak_value(self) -> float:
        return float(self.objective[self.peak_index])


def cross_ambiguity(y: ReceivedEcho, xref: WaveformMatrix, delay: int,
                    doppler_hz: float) -> np.ndarray:
    """Cross-ambiguity matrix E of the echo against the shifted reference.

    Shape (num_rx, num_tx).  The positive-sign Doppler term undoes the phase
    rotation the target impressed on the echo.
    """
    if y.num_samples != xref.num_samples:
        raise ValueError(
            f"echo has {y.num_samples} samples but reference has {xref.num_samples}"
        )
    if y.sample_rate != xref.sample_rate:
        raise ValueError("echo and reference disagree on sample rate")
    ts = xref.sample_period
    n = np.arange(y.num_samples)
    phase = np.exp(2j * np.pi * doppler_hz * n * ts)
    shifted = delay_shift(xref, delay)
    return ts * ((y.samples * phase[None, :]) @ shifted.samples.conj().T)


def _denominator_floor(r: np.ndarray) -> float:
    return DENOM_GUARD * float(np.trace(r).real)


def ml_objective(e: np.ndarray, r: np.ndarray, cfg: ArrayConfig, theta: float) -> float:
    """Beamformed correlation energy normalized by transmit-side energy."""
    e = np.asarray(e)
    r = np.asarray(r)
    if e.shape != (cfg.num_rx, cfg.num_tx):
        raise ValueError(f"E must be {cfg.num_rx}x{cfg.num_tx}, got {e.shape}")
    if r.shape != (cfg.num_tx, cfg.num_tx):
        raise ValueError(f"R must be {cfg.num_tx}x{cfg.num_tx}, got {r.shape}")
    a_t = tx_steering(cfg, theta)
    a_r = rx_steering(cfg, theta)
    denom = float(np.real(a_t.conj() @ r.T @ a_t))
    if denom <= _denominator_floor(r):
        raise DegenerateDenominatorError(
            f"waveform energy along theta={theta:.6f} rad is numerically zero"
        )
    num = float(np.abs(a_r.conj() @ e @ a_t.conj()) ** 2)
    return num / (cfg.num_rx * denom)


def _pick_peak(axis: str, grid: np.ndarray, objective: np.ndarray,
               excluded: np.ndarray) -> EstimationResult:
    if not np.any(np.isfinite(objective)):
        raise DegenerateDenominatorError(
            f"every {axis} grid point was excluded by the denominator guard"
        )
    peak = int(np.nanargmax(objective))  # first occurrence -> smallest grid index
    return EstimationResult(axis=axis, grid=grid, objective=objective,
                            peak_index=peak, excluded=excluded)


def estimate_angle(y: ReceivedEcho, xref: WaveformMatrix, true_delay: int,
                   true_doppler: float, grid: EstimationGrid,
                   cfg: ArrayConfig) -> EstimationResult:
    """Sweep the objective over the angle grid at the true delay and Doppler."""
    e = cross_ambiguity(y, xref, true_delay, true_doppler)
    r = correlation_matrix(xref)
    angles = grid.angle_grid
    bank_t = tx_steering_bank(cfg, angles)
    bank_r = rx_steering_bank(cfg, angles)
    num = np.abs(np.einsum("ig,ij,jg->g", bank_r.conj(), e, bank_t.conj())) ** 2
    denom = np.real(np.einsum("ig,ij,jg->g", bank_t.conj(), r.T, bank_t))
    valid = denom > _denominator_floor(r)
    objective = np.full(angles.size, np.nan)
    objective[valid] = num[valid] / (cfg.num_rx * denom[valid])
    return _pick_peak("angle", angles, objective, np.flatnonzero(~valid))


def _beam_series(y: ReceivedEcho, xref: WaveformMatrix, theta: float,
                 cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray, float]:
    """Scalar receive/reference series after beamforming both sides.

    With p[n] = a_R^H y[n] and s[m] = a_T^T xref[:, m], the objective
    numerator collapses to |T_s * sum_n p[n] e^{j 2 pi f n T_s} s*[n-d]|^2,
    which makes delay and Doppler sweeps one-dimensional correlations.
    """
    a_t = tx_steering(cfg, theta)
    a_r = rx_steering(cfg, theta)
    p = a_r.conj() @ y.samples
    s = a_t @ xref.samples
    r = correlation_matrix(xref)
    denom = float(np.real(a_t.conj() @ r.T @ a_t))
    if denom <= _denominator_floor(r):
        raise DegenerateDenominatorError(
            f"waveform energy along theta={theta:.6f} rad is numerically zero"
        )
    return p, s, denom


def estimate_delay(y: ReceivedEcho, xref: WaveformMatrix, true_theta: float,
                   true_doppler: float, grid: EstimationGrid,
                   cfg: ArrayConfig) -> EstimationResult:
    """Sweep the objective over integer delays at the true angle and Doppler."""
    n_samp = y.num_samples
    delays = grid.delay_grid
    if delays[-1] >= n_samp:
        raise ValueError(
            f"delay grid reaches {delays[-1]} but the waveform has {n_samp} samples"
        )
    p, s, denom = _beam_series(y, xref, true_theta, cfg)
    ts = xref.sample_period
    n = np.arange(n_samp)
    u = p * np.exp(2j * np.pi * true_doppler * n * ts)
    # c[d] = sum_n u[n] s*[n-d] for d = 0..N-1, via zero-padded FFT correlation.
    nfft = 2 * n_samp
    corr = np.fft.ifft(np.fft.fft(u, nfft) * np.conj(np.fft.fft(s, nfft)))[:n_samp]
    objective = np.abs(ts * corr[delays]) ** 2 / (cfg.num_rx * denom)
    return _pick_peak("delay", delays, objective, np.array([], dtype=int))


@functools.lru_cache(maxsize=4)
def _doppler_phase_cached(grid_bytes: bytes, num_samples: int, ts: float) -> np.ndarray:
    freqs = np.frombuffer(grid_bytes, dtype=float)
    n = np.arange(num_samples)
    return np.exp(2j * np.pi * np.outer(freqs, n) * ts)


def estimate_doppler(y: ReceivedEcho, xref: WaveformMatrix, true_theta: float,
                     true_delay: int, grid: EstimationGrid,
                     cfg: ArrayConfig) -> EstimationResult:
    """Sweep the objective over the Doppler grid at the true angle and delay."""
    p, s, denom = _beam_series(y, xref, true_theta, cfg)
    d = int(true_delay)
    if not 0 <= d < y.num_samples:
        raise ValueError(f"true_delay must lie in [0, {y.num_samples - 1}], got {d}")
    s_shifted = np.zeros_like(s)
    s_shifted[d:] = s[: s.size - d] if d else s
    v = p * np.conj(s_shifted)
    ts = xref.sample_period
    phase = _doppler_phase_cached(grid.doppler_grid.tobytes(), y.num_samples, ts)
    objective = np.abs(ts * (phase @ v)) ** 2 / (cfg.num_rx * denom)
    return _pick_peak("doppler", grid.doppler_grid, objective, np.array([], dtype=int))
