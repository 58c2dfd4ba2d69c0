import math
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings

from cardiotriage import _backend, _purepy
from cardiotriage.oracle import exact_wcss, rgs_to_blocks, stirling2

from conftest import BACKENDS, _kernels, binary_datasets


def _scale(n):
    return reduce(math.lcm, range(1, n + 1), 1)


def test_backend_selected():
    assert _backend.BACKEND in ("cython", "python")
    if _kernels is not None:
        assert _backend.BACKEND == "cython" or _backend.kernels is _purepy


def test_pairwise_table1(backend, table1):
    out = backend.pairwise_sq(table1.rows())
    assert out[3, 5] == 10.0 and out[0, 1] == 2.0
    assert np.array_equal(out, out.T)


def test_scan_table1(backend, table1):
    rgs, score, examined = backend.scan_partitions(table1.rows(), 3, _scale(10))
    assert examined == 9330
    assert score == 37 * _scale(10) // 4
    assert rgs == [0, 0, 1, 1, 2, 2, 1, 0, 1, 2]


@pytest.mark.parametrize("n, k", [(1, 1), (2, 1), (2, 2), (5, 3), (12, 3)])
def test_scan_counts(backend, n, k):
    X = [[(i >> b) & 1 for b in range(4)] for i in range(n)]
    _, _, examined = backend.scan_partitions(X, k, _scale(n))
    assert examined == stirling2(n, k)


@pytest.mark.skipif(_kernels is None, reason="extension not built")
@settings(max_examples=200, deadline=None)
@given(binary_datasets(max_n=9))
def test_backends_bit_identical(d):
    X = d.rows()
    assert np.array_equal(_purepy.pairwise_sq(X), _kernels.pairwise_sq(X))
    for k in range(1, d.n + 1):
        a = _purepy.scan_partitions(X, k, _scale(d.n))
        b = _kernels.scan_partitions(X, k, _scale(d.n))
        assert a == b
        assert exact_wcss(rgs_to_blocks(a[0]), d) * _scale(d.n) == a[1]


def test_pairwise_real_values(backend):
    X = np.array([[0.1, 0.2], [0.3, 0.7], [1.0, 0.0]])
    ref = np.array([[((a - b) ** 2).sum() for b in X] for a in X])
    assert np.allclose(backend.pairwise_sq(X), ref, rtol=0, atol=1e-15)
