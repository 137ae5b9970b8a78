"""Selection of the interference channel whose null space hurts the radar least.

For every base station channel the radar computes the projection loss
||X - P_i X||_F, the Frobenius mass of the waveform lost to nulling that
channel.  The channel with the smallest loss is selected for transmission;
the largest-loss channel is kept as the worst case for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .channels import ChannelSet
from .projection import DEFAULT_RANK_TOL, Projector, projection_matrix
from .waveform import WaveformMatrix


class NoUsableNullSpaceError(ValueError):
    """Every candidate channel has a zero-dimensional null space."""


@dataclass(eq=False)
class SelectionResult:
    best_index: int          # position in the channel set (bs_id = index + 1)
    worst_index: int
    losses: List[float]      # projection loss per channel, channel-set order
    best_projector: Projector
    worst_projector: Projector


def projection_loss(x: WaveformMatrix, projector: Projector) -> float:
    """Frobenius norm of the waveform component removed by the projector."""
    if projector.num_tx != x.num_tx:
        raise ValueError(
            f"projector is {projector.num_tx}x{projector.num_tx} but waveform has "
            f"{x.num_tx} transmit rows"
        )
    residual = x.samples - projector.matrix @ x.samples
    return float(np.linalg.norm(residual))


def select_channels(x: WaveformMatrix, channel_set: ChannelSet,
                    tol: float = DEFAULT_RANK_TOL) -> SelectionResult:
    """Pick the least- and most-damaging channels by projection loss.

    Ties break toward the lowest bs_id.  Degenerate channels (P = 0) stay in
    the scan -- their loss is the full waveform energy -- but if every channel
    is degenerate there is nothing usable to transmit and the call fails.
    """
    if channel_set.num_tx != x.num_tx:
        raise ValueError(
            f"channel set has num_tx={channel_set.num_tx} but waveform has {x.num_tx} rows"
        )
    projectors = [projection_matrix(ch, tol) for ch in channel_set]
    if all(p.degenerate for p in projectors):
        raise NoUsableNullSpaceError(
            "no usable null space: every channel has full column rank"
        )
    losses = [projection_loss(x, p) for p in projectors]
    best = int(np.argmin(losses))   # first occurrence == lowest bs_id on ties
    worst = int(np.argmax(losses))
    return SelectionResult(
        best_index=best,
        worst_index=worst,
        losses=losses,
        best_projector=projectors[best],
        worst_projector=projectors[worst],
    )
