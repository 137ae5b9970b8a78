"""Interference channel sampling: distribution sanity, determinism, round trips."""

import numpy as np
import pytest

from nspsim import (ChannelSet, InterferenceChannel, channel_set_from_doc,
                    channel_set_to_doc, perturb_csi, sample_channel_set)


def test_shapes_and_ids():
    cset = sample_channel_set(10, [2, 4, 6, 8], seed=0)
    assert len(cset) == 4
    assert [ch.bs_id for ch in cset] == [1, 2, 3, 4]
    assert [ch.matrix.shape for ch in cset] == [(2, 10), (4, 10), (6, 10), (8, 10)]
    assert cset.num_tx == 10


def test_sampling_deterministic_in_seed():
    a = sample_channel_set(10, [2, 4, 6, 8], seed=123)
    b = sample_channel_set(10, [2, 4, 6, 8], seed=123)
    c = sample_channel_set(10, [2, 4, 6, 8], seed=124)
    for ch_a, ch_b in zip(a, b):
        assert np.array_equal(ch_a.matrix, ch_b.matrix)
    assert not np.array_equal(a[0].matrix, c[0].matrix)


def test_unit_variance_over_many_draws():
    # >= 1e5 entries: 50 sets of 4 channels of 8x10 + heterogeneous fill
    entries = []
    for seed in range(125):
        cset = sample_channel_set(10, [8, 8, 8, 8, 8, 8, 8, 8, 8, 8], seed=seed)
        entries.append(np.concatenate([ch.matrix.ravel() for ch in cset]))
    h = np.concatenate(entries)
    assert h.size >= 1e5
    mean_sq = np.mean(np.abs(h) ** 2)
    assert 0.99 <= mean_sq <= 1.01, f"sample mean |h|^2 = {mean_sq}"


def test_normality_sanity_kurtosis():
    entries = []
    for seed in range(125):
        cset = sample_channel_set(10, [8] * 10, seed=seed)
        entries.append(np.concatenate([ch.matrix.ravel() for ch in cset]))
    re = np.concatenate(entries).real
    assert re.size >= 1e5
    m2 = np.mean((re - re.mean()) ** 2)
    m4 = np.mean((re - re.mean()) ** 4)
    kurtosis = m4 / m2 ** 2  # Pearson kurtosis; 3 for a Gaussian
    assert 2.5 <= kurtosis <= 3.5, f"kurtosis = {kurtosis}"


def test_perturb_zero_error_is_identical_copy():
    cset = sample_channel_set(10, [2, 4], seed=1)
    copy = perturb_csi(cset, 0.0, seed=99)
    for orig, new in zip(cset, copy):
        assert np.array_equal(orig.matrix, new.matrix)
        assert new.matrix is not orig.matrix


def test_perturb_error_magnitude_chi_mean():
    # E||H_hat - H||_F = error_std * sqrt(N_R * M_T) up to chi-distribution spread
    error_std = 0.1
    expected = error_std * np.sqrt(4 * 10)
    dists = []
    for seed in range(100):
        cset = sample_channel_set(10, [4], seed=seed)
        pert = perturb_csi(cset, error_std, seed=10_000 + seed)
        d = np.linalg.norm(pert[0].matrix - cset[0].matrix)
        dists.append(d)
        assert 0.7 * expected < d < 1.3 * expected, f"trial {seed}: {d} vs {expected}"
    assert abs(np.mean(dists) - expected) < 0.1 * expected


def test_perturb_preserves_shapes_and_order():
    cset = sample_channel_set(10, [2, 4, 6, 8], seed=2)
    pert = perturb_csi(cset, 0.3, seed=3)
    assert [ch.bs_id for ch in pert] == [1, 2, 3, 4]
    assert [ch.matrix.shape for ch in pert] == [ch.matrix.shape for ch in cset]


def test_perturb_deterministic_in_seed():
    cset = sample_channel_set(10, [2, 4], seed=4)
    a = perturb_csi(cset, 0.2, seed=7)
    b = perturb_csi(cset, 0.2, seed=7)
    for ch_a, ch_b in zip(a, b):
        assert np.array_equal(ch_a.matrix, ch_b.matrix)


def test_json_document_round_trip_is_exact():
    cset = sample_channel_set(10, [2, 4, 6, 8], seed=5)
    doc = channel_set_to_doc(cset)
    back = channel_set_from_doc(doc)
    for orig, new in zip(cset, back):
        assert orig.bs_id == new.bs_id
        assert np.array_equal(orig.matrix, new.matrix)


def test_validation_rejects_bad_inputs():
    with pytest.raises(ValueError):
        sample_channel_set(0, [2], seed=0)
    with pytest.raises(ValueError):
        sample_channel_set(10, [], seed=0)
    with pytest.raises(ValueError):
        sample_channel_set(10, [2, 0], seed=0)
    with pytest.raises(ValueError):
        perturb_csi(sample_channel_set(10, [2], seed=0), -0.1, seed=0)
    with pytest.raises(ValueError):
        InterferenceChannel(bs_id=0, matrix=np.ones((2, 3), dtype=complex))
    with pytest.raises(ValueError):
        InterferenceChannel(bs_id=1, matrix=np.array([[np.inf + 0j]]))
    with pytest.raises(ValueError):
        ChannelSet(channels=())
    with pytest.raises(ValueError):
        ChannelSet(channels=(InterferenceChannel(bs_id=2, matrix=np.ones((1, 2), dtype=complex)),))


def test_malformed_document_rejected():
    with pytest.raises(ValueError):
        channel_set_from_doc({"channels": [{"bs_id": 1}]})
    with pytest.raises(ValueError):
        channel_set_from_doc({})
