"""Interference channels between the radar transmitter and cellular base stations.

Each base station j has an (N_Rj x M_T) channel matrix H_j with i.i.d.
circularly-symmetric complex Gaussian entries of unit variance.  Base stations
may have different antenna counts; the set is ordered by bs_id = 1..N_BS.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np


@dataclass(eq=False)
class InterferenceChannel:
    bs_id: int
    matrix: np.ndarray  # (num_rx_bs, num_tx) complex128

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        if self.bs_id < 1:
            raise ValueError(f"bs_id must be >= 1, got {self.bs_id}")
        if self.matrix.ndim != 2 or min(self.matrix.shape) < 1:
            raise ValueError(f"channel matrix must be 2-D and non-empty, got shape {self.matrix.shape}")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError(f"channel matrix for bs_id={self.bs_id} has non-finite entries")

    @property
    def num_rx(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_tx(self) -> int:
        return self.matrix.shape[1]


@dataclass(eq=False)
class ChannelSet:
    channels: tuple

    def __post_init__(self) -> None:
        self.channels = tuple(self.channels)
        if not self.channels:
            raise ValueError("channel set must contain at least one channel")
        ids = [ch.bs_id for ch in self.channels]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError(f"bs_ids must be 1..{len(ids)} in order, got {ids}")
        tx_counts = {ch.num_tx for ch in self.channels}
        if len(tx_counts) != 1:
            raise ValueError(f"all channels must share num_tx, got {sorted(tx_counts)}")

    @property
    def num_tx(self) -> int:
        return self.channels[0].num_tx

    def __len__(self) -> int:
        return len(self.channels)

    def __iter__(self) -> Iterator[InterferenceChannel]:
        return iter(self.channels)

    def __getitem__(self, i: int) -> InterferenceChannel:
        return self.channels[i]


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def sample_channel_set(num_tx: int, rx_antennas_per_bs: Sequence[int], seed: int) -> ChannelSet:
    """Draw one i.i.d. CN(0, 1) channel per base station, deterministically in seed.

    rx_antennas_per_bs[j] is the antenna count of base station j+1; order fixes
    the bs_id assignment and therefore the draw order.
    """
    if num_tx < 1:
        raise ValueError(f"num_tx must be >= 1, got {num_tx}")
    counts = list(rx_antennas_per_bs)
    if not counts:
        raise ValueError("rx_antennas_per_bs must be non-empty")
    for j, c in enumerate(counts):
        if int(c) != c or c < 1:
            raise ValueError(f"rx_antennas_per_bs[{j}] must be a positive integer, got {c}")
    rng = np.random.default_rng(seed)
    channels = [
        InterferenceChannel(bs_id=j + 1, matrix=_complex_gaussian(rng, (int(c), num_tx)))
        for j, c in enumerate(counts)
    ]
    return ChannelSet(channels=tuple(channels))


def perturb_csi(channel_set: ChannelSet, error_std: float, seed: int) -> ChannelSet:
    """Model imperfect channel knowledge: H_hat = H + error_std * CN(0, 1).

    error_std = 0 returns an identical (deep) copy.
    """
    if not (error_std >= 0.0 and np.isfinite(error_std)):
        raise ValueError(f"error_std must be >= 0, got {error_std}")
    if error_std == 0.0:
        return ChannelSet(channels=tuple(
            InterferenceChannel(bs_id=ch.bs_id, matrix=ch.matrix.copy())
            for ch in channel_set
        ))
    rng = np.random.default_rng(seed)
    perturbed = [
        InterferenceChannel(
            bs_id=ch.bs_id,
            matrix=ch.matrix + error_std * _complex_gaussian(rng, ch.matrix.shape),
        )
        for ch in channel_set
    ]
    return ChannelSet(channels=tuple(perturbed))


def channel_set_to_doc(channel_set: ChannelSet) -> dict:
    """JSON-ready document keyed by base station, exact to the float64 bit."""
    return {
        "num_tx": channel_set.num_tx,
        "channels": [
            {
                "bs_id": ch.bs_id,
                "num_rx": ch.num_rx,
                "real": ch.matrix.real.tolist(),
                "imag": ch.matrix.imag.tolist(),
            }
            for ch in channel_set
        ],
    }


def channel_set_from_doc(doc: dict) -> ChannelSet:
    """Inverse of channel_set_to_doc."""
    try:
        entries = doc["channels"]
        channels = [
            InterferenceChannel(
                bs_id=int(e["bs_id"]),
                matrix=np.asarray(e["real"], dtype=float) + 1j * np.asarray(e["imag"], dtype=float),
            )
            for e in entries
        ]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed channel document: {exc}") from exc
    cset = ChannelSet(channels=tuple(channels))
    if cset.num_tx != int(doc.get("num_tx", cset.num_tx)):
        raise ValueError("num_tx in document disagrees with channel matrices")
    return cset
