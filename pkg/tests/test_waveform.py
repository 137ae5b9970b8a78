"""Waveform generation, correlation and delay against brute-force oracles."""

import numpy as np
import pytest

from nspsim import (WaveformMatrix, correlation_matrix, delay_shift,
                    generate_orthogonal, generate_random)


def brute_force_correlation(samples, sample_period):
    """R = T_s * sum_n x[n] x[n]^H as an explicit per-snapshot accumulation."""
    m, n = samples.shape
    r = np.zeros((m, m), dtype=complex)
    for i in range(n):
        col = samples[:, i:i + 1]
        r += col @ col.conj().T
    return sample_period * r


def test_orthogonal_gram_is_exactly_scaled_identity():
    x = generate_orthogonal(10, 10000, seed=7, sample_rate=1e7)
    gram = x.samples @ x.samples.conj().T
    assert np.max(np.abs(gram - 10000 * np.eye(10))) < 1e-9 * 10000


def test_orthogonal_off_diagonal_rows_below_1e9_relative():
    x = generate_orthogonal(8, 4000, seed=3)
    gram = x.samples @ x.samples.conj().T
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) / 4000 < 1e-9


def test_per_row_average_power_is_one():
    for seed in (0, 1, 2):
        x = generate_orthogonal(10, 10000, seed=seed)
        powers = np.mean(np.abs(x.samples) ** 2, axis=1)
        assert np.max(np.abs(powers - 1.0)) < 1e-9
        xr = generate_random(10, 10000, seed=seed)
        powers = np.mean(np.abs(xr.samples) ** 2, axis=1)
        assert np.max(np.abs(powers - 1.0)) < 1e-9


def test_ragged_length_is_still_exactly_orthogonal():
    # 10007 is not a multiple of 10; the whitening pass must restore X X^H = N I.
    x = generate_orthogonal(10, 10007, seed=5)
    gram = x.samples @ x.samples.conj().T
    assert np.max(np.abs(gram - 10007 * np.eye(10))) < 1e-9 * 10007


def test_generation_is_deterministic_in_seed():
    a = generate_orthogonal(6, 600, seed=42)
    b = generate_orthogonal(6, 600, seed=42)
    c = generate_orthogonal(6, 600, seed=43)
    assert np.array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)
    ra = generate_random(6, 600, seed=42)
    rb = generate_random(6, 600, seed=42)
    assert np.array_equal(ra.samples, rb.samples)


def test_too_few_samples_rejected():
    with pytest.raises(ValueError):
        generate_orthogonal(10, 9, seed=0)
    with pytest.raises(ValueError):
        generate_random(10, 9, seed=0)


def test_correlation_matches_brute_force_on_random_matrix():
    rng = np.random.default_rng(9)
    samples = rng.standard_normal((4, 37)) + 1j * rng.standard_normal((4, 37))
    x = WaveformMatrix(samples=samples, sample_rate=2.5e6)
    expected = brute_force_correlation(samples, 1.0 / 2.5e6)
    got = correlation_matrix(x)
    assert np.max(np.abs(got - expected)) < 1e-12 * np.max(np.abs(expected))


def test_correlation_of_orthogonal_waveform_is_duration_times_identity():
    x = generate_orthogonal(10, 10000, seed=7, sample_rate=1e7)
    r = correlation_matrix(x)
    t0 = 10000 / 1e7
    assert np.max(np.abs(r - t0 * np.eye(10))) < 1e-9 * t0


def test_correlation_is_hermitian_psd():
    for seed in range(5):
        x = generate_random(5, 200, seed=seed)
        r = correlation_matrix(x)
        assert np.max(np.abs(r - r.conj().T)) < 1e-12 * np.max(np.abs(r))
        evals = np.linalg.eigvalsh(r)
        assert evals.min() > -1e-12


def test_delay_shift_semantics():
    rng = np.random.default_rng(4)
    samples = rng.standard_normal((3, 20)) + 1j * rng.standard_normal((3, 20))
    x = WaveformMatrix(samples=samples, sample_rate=1.0)
    d = 6
    shifted = delay_shift(x, d)
    assert shifted.num_samples == 20
    assert np.array_equal(shifted.samples[:, :d], np.zeros((3, d)))
    assert np.array_equal(shifted.samples[:, d:], samples[:, :20 - d])
    assert np.array_equal(delay_shift(x, 0).samples, samples)


def test_delay_shift_rejects_out_of_window():
    x = generate_orthogonal(3, 30, seed=0)
    with pytest.raises(ValueError):
        delay_shift(x, 30)
    with pytest.raises(ValueError):
        delay_shift(x, -1)


def test_waveform_matrix_validation():
    with pytest.raises(ValueError):
        WaveformMatrix(samples=np.ones(5, dtype=complex), sample_rate=1.0)
    with pytest.raises(ValueError):
        WaveformMatrix(samples=np.array([[np.nan + 0j]]), sample_rate=1.0)
    with pytest.raises(ValueError):
        WaveformMatrix(samples=np.ones((2, 4), dtype=complex), sample_rate=0.0)


def test_duration_and_sample_period():
    x = generate_orthogonal(10, 10000, seed=1, sample_rate=1e7)
    assert x.duration == pytest.approx(1e-3, rel=1e-15)
    assert x.sample_period == pytest.approx(1e-7, rel=1e-15)
