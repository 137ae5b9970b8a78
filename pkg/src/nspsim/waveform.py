"""Transmit waveform banks for a colocated MIMO radar.

A waveform is an (num_tx x num_samples) complex baseband matrix X whose row k
holds the chip sequence radiated by transmit element k.  Rows are normalized
to unit average power, so X X^H = N * I for the orthogonal family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class WaveformMatrix:
    """Sampled multi-channel transmit waveform."""

    samples: np.ndarray  # (num_tx, num_samples) complex128
    sample_rate: float   # Hz; one sample per chip, so this equals the bandwidth

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.ndim != 2:
            raise ValueError(f"samples must be 2-D, got ndim={self.samples.ndim}")
        if self.samples.shape[1] < 1:
            raise ValueError("waveform needs at least one sample")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("waveform samples must be finite")
        if not (self.sample_rate > 0.0 and np.isfinite(self.sample_rate)):
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")

    @property
    def num_tx(self) -> int:
        return self.samples.shape[0]

    @property
    def num_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def sample_period(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def duration(self) -> float:
        return self.num_samples / self.sample_rate


def _unit_modulus_chips(num_samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.exp(2j * np.pi * rng.random(num_samples))


def generate_orthogonal(num_tx: int, num_samples: int, seed: int,
                        sample_rate: float = 1.0) -> WaveformMatrix:
    """Exactly orthogonal unit-power waveform set: X X^H = num_samples * I.

    Row k spreads a shared pseudo-random unit-modulus chip sequence with the
    k-th row of the num_tx-point DFT phase code, cycled block-wise over time.
    When num_samples is not a multiple of num_tx the trailing partial block
    breaks exact orthogonality, so a symmetric whitening pass restores it.
    """
    if num_tx < 1:
        raise ValueError(f"num_tx must be >= 1, got {num_tx}")
    if num_samples < num_tx:
        raise ValueError(
            f"num_samples must be >= num_tx for orthogonal rows, got {num_samples} < {num_tx}"
        )
    chips = _unit_modulus_chips(num_samples, seed)
    rows = np.arange(num_tx)[:, None]
    slots = np.arange(num_samples)[None, :] % num_tx
    code = np.exp(-2j * np.pi * rows * slots / num_tx)
    x = code * chips[None, :]
    if num_samples % num_tx != 0:
        # Whiten the Gram back to num_samples * I; a no-op for aligned lengths.
        gram = x @ x.conj().T
        evals, evecs = np.linalg.eigh(gram)
        inv_sqrt = evecs @ np.diag(evals ** -0.5) @ evecs.conj().T
        x = np.sqrt(num_samples) * (inv_sqrt @ x)
    return WaveformMatrix(samples=x, sample_rate=sample_rate)


def generate_random(num_tx: int, num_samples: int, seed: int,
                    sample_rate: float = 1.0) -> WaveformMatrix:
    """Pseudo-random waveform set: i.i.d. complex Gaussian rows, only
    approximately orthogonal.  Each row is rescaled to exact unit average
    power so the total transmit energy matches the orthogonal family.
    """
    if num_tx < 1:
        raise ValueError(f"num_tx must be >= 1, got {num_tx}")
    if num_samples < num_tx:
        raise ValueError(
            f"num_samples must be >= num_tx, got {num_samples} < {num_tx}"
        )
    rng = np.random.default_rng(seed)
    x = (rng.standard_normal((num_tx, num_samples))
         + 1j * rng.standard_normal((num_tx, num_samples))) / np.sqrt(2.0)
    row_norms = np.linalg.norm(x, axis=1, keepdims=True)
    x = x * (np.sqrt(num_samples) / row_norms)
    return WaveformMatrix(samples=x, sample_rate=sample_rate)


def correlation_matrix(x: WaveformMatrix) -> np.ndarray:
    """Waveform correlation matrix R = T_s * sum_n x[n] x[n]^H.

    Hermitian positive semidefinite, shape (num_tx, num_tx).  For an exactly
    orthogonal unit-power waveform this equals duration * I.
    """
    return x.sample_period * (x.samples @ x.samples.conj().T)


def delay_shift(x: WaveformMatrix, delay_samples: int) -> WaveformMatrix:
    """Right-shift every row by an integer number of samples, zero-filling
    the first `delay_samples` columns.  Duration is unchanged."""
    d = int(delay_samples)
    if d != delay_samples:
        raise ValueError(f"delay_samples must be an integer, got {delay_samples}")
    if not 0 <= d < x.num_samples:
        raise ValueError(
            f"delay_samples must lie in [0, {x.num_samples - 1}], got {d}"
        )
    out = np.zeros_like(x.samples)
    if d == 0:
        out[:] = x.samples
    else:
        out[:, d:] = x.samples[:, :-d]
    return WaveformMatrix(samples=out, sample_rate=x.sample_rate)
