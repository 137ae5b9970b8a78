"""Null-space projectors built from the SVD of an interference channel.

For a channel H with SVD H = U diag(s) V^H, zeroing the directions carrying
the k nonzero singular values gives P = V diag(0,..,0,1,..,1) V^H, the
orthogonal projector onto the null space of H.  Transmitting P X instead of X
puts zero interference onto the base station while spending the waveform
energy that lived in the rank-k row space of H.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .channels import InterferenceChannel
from .waveform import WaveformMatrix

# Singular values below DEFAULT_RANK_TOL * max(largest singular value, 1) are
# treated as numerical zeros when counting the channel rank.
DEFAULT_RANK_TOL = 1e-10


@dataclass(eq=False)
class Projector:
    """Orthogonal projector onto the null space of one interference channel."""

    matrix: np.ndarray      # (num_tx, num_tx) Hermitian idempotent
    channel_rank: int       # k, number of retained singular values of H
    null_dim: int           # num_tx - k
    rank_tolerance: float
    degenerate: bool        # True when the channel has no null space (P = 0)

    @property
    def num_tx(self) -> int:
        return self.matrix.shape[0]


def channel_svd(channel: InterferenceChannel) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full SVD of the channel matrix: H = U diag(s) V^H.

    Returns (U, s, V) with U (num_rx x num_rx), s nonincreasing of length
    min(num_rx, num_tx), and V (num_tx x num_tx) so every right singular
    vector is available for the projector construction.
    """
    h = channel.matrix
    if not np.all(np.isfinite(h)):
        raise ValueError(f"channel bs_id={channel.bs_id} has non-finite entries")
    u, s, vh = np.linalg.svd(h, full_matrices=True)
    return u, s, vh.conj().T


def sigma_prime(singular_values: np.ndarray, num_tx: int,
                tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Diagonal selector that keeps only null-space directions.

    Returns the (num_tx x num_tx) diagonal matrix with k zeros followed by
    num_tx - k ones, where k counts singular values above
    tol * max(largest value, 1).
    """
    s = np.asarray(singular_values, dtype=float)
    if s.ndim != 1:
        raise ValueError("singular values must be a 1-D sequence")
    if s.size and (np.any(s < 0) or np.any(np.diff(s) > 0)):
        raise ValueError("singular values must be nonneg and nonincreasing")
    if not (tol > 0 and np.isfinite(tol)):
        raise ValueError(f"tol must be positive, got {tol}")
    threshold = tol * max(float(s[0]) if s.size else 0.0, 1.0)
    k = int(np.count_nonzero(s > threshold))
    diag = np.ones(num_tx)
    diag[:k] = 0.0
    return np.diag(diag)


def projection_matrix(channel: InterferenceChannel,
                      tol: float = DEFAULT_RANK_TOL) -> Projector:
    """Null-space projector P = V Sigma' V^H for one channel.

    P is Hermitian and idempotent with trace equal to the null-space
    dimension.  A full-row-rank channel with num_rx >= num_tx leaves no null
    space; the projector is then the zero matrix and flagged degenerate
    rather than raising, so callers can decide how to handle it.
    """
    _, s, v = channel_svd(channel)
    selector = sigma_prime(s, channel.num_tx, tol)
    p = v @ selector @ v.conj().T
    p = 0.5 * (p + p.conj().T)  # kill roundoff asymmetry; P is Hermitian by construction
    k = int(channel.num_tx - np.trace(selector).real)
    null_dim = channel.num_tx - k
    return Projector(
        matrix=p,
        channel_rank=k,
        null_dim=null_dim,
        rank_tolerance=tol,
        degenerate=(null_dim == 0),
    )


def project_waveform(projector: Projector, x: WaveformMatrix) -> WaveformMatrix:
    """Apply the projector to every snapshot: returns P X with metadata kept."""
    if projector.num_tx != x.num_tx:
        raise ValueError(
            f"projector is {projector.num_tx}x{projector.num_tx} but waveform has "
            f"{x.num_tx} transmit rows"
        )
    return WaveformMatrix(samples=projector.matrix @ x.samples, sample_rate=x.sample_rate)
