"""Uniform linear array geometry and narrowband steering vectors.

Transmit and receive arrays are colocated ULAs sharing the same axis.  The
first element of each array is the phase reference, and angles are measured
from broadside in radians over [-pi/2, pi/2].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayConfig:
    """Geometry and carrier of a colocated MIMO radar front end."""

    num_tx: int
    num_rx: int
    element_spacing: float  # meters, common to both arrays
    carrier_freq: float     # Hz
    propagation_speed: float = 3.0e8  # m/s

    def __post_init__(self) -> None:
        if self.num_tx < 1:
            raise ValueError(f"num_tx must be >= 1, got {self.num_tx}")
        if self.num_rx < 1:
            raise ValueError(f"num_rx must be >= 1, got {self.num_rx}")
        if not (self.element_spacing > 0.0 and np.isfinite(self.element_spacing)):
            raise ValueError(f"element_spacing must be positive, got {self.element_spacing}")
        if not (self.carrier_freq > 0.0 and np.isfinite(self.carrier_freq)):
            raise ValueError(f"carrier_freq must be positive, got {self.carrier_freq}")
        if not (self.propagation_speed > 0.0 and np.isfinite(self.propagation_speed)):
            raise ValueError(f"propagation_speed must be positive, got {self.propagation_speed}")

    @property
    def wavelength(self) -> float:
        return self.propagation_speed / self.carrier_freq

    @property
    def angular_carrier(self) -> float:
        """Carrier angular frequency, rad/s."""
        return 2.0 * np.pi * self.carrier_freq


def _check_angle(theta: float) -> float:
    theta = float(theta)
    if not np.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta}")
    if abs(theta) > np.pi / 2 + 1e-12:
        raise ValueError(f"angle must lie in [-pi/2, pi/2], got {theta}")
    return theta


def _steering_bank(num_elements: int, cfg: ArrayConfig, angles: np.ndarray) -> np.ndarray:
    """Steering vectors for many angles at once, one column per angle.

    Element k (0-based) sees the propagation delay k * d * sin(theta) / c
    relative to the first element, hence the phase exp(-j * w_c * delay).
    """
    angles = np.asarray(angles, dtype=float)
    delays = np.outer(np.arange(num_elements), np.sin(angles)) * (
        cfg.element_spacing / cfg.propagation_speed
    )
    return np.exp(-1j * cfg.angular_carrier * delays)


def tx_steering(cfg: ArrayConfig, theta: float) -> np.ndarray:
    """Transmit steering vector a_T(theta), shape (num_tx,), unit-modulus entries."""
    theta = _check_angle(theta)
    return _steering_bank(cfg.num_tx, cfg, np.array([theta]))[:, 0]


def rx_steering(cfg: ArrayConfig, theta: float) -> np.ndarray:
    """Receive steering vector a_R(theta), shape (num_rx,), unit-modulus entries."""
    theta = _check_angle(theta)
    return _steering_bank(cfg.num_rx, cfg, np.array([theta]))[:, 0]


def tx_steering_bank(cfg: ArrayConfig, angles: np.ndarray) -> np.ndarray:
    """Transmit steering vectors for a grid of angles, shape (num_tx, len(angles))."""
    for a in np.asarray(angles, dtype=float).ravel():
        _check_angle(a)
    return _steering_bank(cfg.num_tx, cfg, angles)


def rx_steering_bank(cfg: ArrayConfig, angles: np.ndarray) -> np.ndarray:
    """Receive steering vectors for a grid of angles, shape (num_rx, len(angles))."""
    for a in np.asarray(angles, dtype=float).ravel():
        _check_angle(a)
    return _steering_bank(cfg.num_rx, cfg, angles)


def steering_matrix(cfg: ArrayConfig, theta: float) -> np.ndarray:
    """Rank-one two-way array response A(theta) = a_R(theta) a_T(theta)^T.

    Shape (num_rx, num_tx); every entry has unit modulus.
    """
    a_r = rx_steering(cfg, theta)
    a_t = tx_steering(cfg, theta)
    return np.outer(a_r, a_t)
