"""Tests for the channel model and capacity computations."""

import math

import numpy as np
import pytest

from composite_codec.core import DomainError
from composite_codec.capacity import (
    blahut_arimoto,
    capacity_binary_pair,
    capacity_composite,
    channel_matrix,
    mutual_information,
    render_svg,
    sweep,
    symmetric_input,
)


def test_channel_matrix_rows():
    p = 0.1
    q = 1 - p
    M = channel_matrix(p)
    assert M.shape == (3, 4)
    # inputs 0, 1, 2; output columns 0, 1, 2, '?'
    assert np.allclose(M[0], [q * q, p * q, p * p, p * q])
    assert np.allclose(M[1], [p * q, q * q, p * q, p * p])
    assert np.allclose(M[2], [p * p, p * q, q * q, p * q])
    assert np.allclose(M.sum(axis=1), 1.0)


def test_channel_matrix_is_input_symmetric():
    # Rows are permutations of each other, so H(Y|X) is input-independent.
    M = channel_matrix(0.23)
    sorted_rows = np.sort(M, axis=1)
    assert np.allclose(sorted_rows[0], sorted_rows[1])
    assert np.allclose(sorted_rows[0], sorted_rows[2])


def test_channel_matrix_validation():
    with pytest.raises(DomainError):
        channel_matrix(-0.1)
    with pytest.raises(DomainError):
        channel_matrix(1.1)
    # any crossover in [0, 1] is a legal stochastic matrix
    assert np.allclose(channel_matrix(0.6).sum(axis=1), 1.0)


def test_symmetric_input():
    dist = symmetric_input(0.25)
    assert np.allclose(dist, [0.25, 0.5, 0.25])
    with pytest.raises(DomainError):
        symmetric_input(0.6)


def test_mutual_information_noiseless():
    M = channel_matrix(0.0)
    bits = mutual_information(np.array([1 / 3, 1 / 3, 1 / 3]), M)
    assert abs(bits - math.log2(3)) < 1e-12


def test_capacity_anchors():
    r0 = capacity_composite(0.0)
    assert abs(r0.bits - math.log2(3)) < 1e-9
    assert abs(r0.alpha - 1 / 3) < 1e-6
    assert abs(capacity_binary_pair(0.0) - 1.0) < 1e-12
    assert abs(capacity_composite(0.5).bits) < 1e-9
    assert abs(capacity_binary_pair(0.5)) < 1e-12


def test_capacity_decreases_with_noise():
    values = [capacity_composite(p).bits for p in (0.0, 0.1, 0.2, 0.3, 0.4)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_composite_beats_independent_binary_pair():
    for p in (0.05, 0.15, 0.3):
        assert capacity_composite(p).bits > capacity_binary_pair(p)


def test_blahut_arimoto_agrees_with_golden_section():
    for p in (0.05, 0.25, 0.45):
        dist, bits = blahut_arimoto(channel_matrix(p))
        assert abs(bits - capacity_composite(p).bits) < 1e-6
        assert abs(dist.sum() - 1.0) < 1e-12
        assert abs(dist[0] - dist[2]) < 1e-6  # optimum is symmetric


def test_blahut_arimoto_binary_symmetric_channel():
    p = 0.11
    M = np.array([[1 - p, p], [p, 1 - p]])
    _, bits = blahut_arimoto(M)
    h = -(p * math.log2(p) + (1 - p) * math.log2(1 - p))
    assert abs(bits - (1 - h)) < 1e-9


def test_sweep_rows():
    rows = sweep([0.1, 0.2])
    assert len(rows) == 2
    p, alpha, composite_bits, pair_bits = rows[0]
    assert p == 0.1
    assert 0 < alpha < 1
    assert composite_bits > pair_bits


def test_render_svg():
    rows = sweep([0.1, 0.2, 0.3])
    svg = render_svg(rows)
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 2
