"""The coefficient-array kernels must agree exactly with the generic path."""

import random

import numpy as np
import pytest

from cubeblocks import fieldmat
from cubeblocks.fields import FiniteField
from cubeblocks.matrices import RingMatrix, rank, rref

PARAMS = [(2, 1), (2, 8), (3, 4), (7, 3), (5, 1)]


def _random(f, nr, nc, rng):
    return RingMatrix(f, nr, nc, [f.sample(rng) for _ in range(nr * nc)])


@pytest.mark.parametrize("p,m", PARAMS)
def test_array_roundtrip(p, m):
    f = FiniteField(p, m)
    rng = random.Random(p * 31 + m)
    mat = _random(f, 5, 3, rng)
    assert fieldmat.from_array(f, fieldmat.to_array(f, mat)) == mat


@pytest.mark.parametrize("p,m", PARAMS)
def test_matmul_matches_generic(p, m):
    f = FiniteField(p, m)
    rng = random.Random(p * 37 + m)
    for _ in range(10):
        a, b = _random(f, 4, 5, rng), _random(f, 5, 3, rng)
        got = fieldmat.matmul(f, fieldmat.to_array(f, a), fieldmat.to_array(f, b))
        assert fieldmat.from_array(f, got) == a @ b


@pytest.mark.parametrize("p,m", PARAMS)
def test_rref_rank_match_generic(p, m):
    f = FiniteField(p, m)
    rng = random.Random(p * 41 + m)
    for _ in range(10):
        mat = _random(f, 5, 6, rng)
        arr = fieldmat.to_array(f, mat)
        red, pivots = fieldmat.rref(f, arr)
        gen_red, gen_pivots = rref(mat)
        assert fieldmat.from_array(f, red) == gen_red
        assert pivots == gen_pivots
        assert fieldmat.rank(f, arr) == rank(mat)


def test_scalar_helpers():
    f = FiniteField(3, 4)
    s = fieldmat.scalar_matrix(f, 4, 7)
    assert fieldmat.scalar_of(f, s) == 7
    off = s.copy()
    off[0, 1, 0] = 1
    assert fieldmat.scalar_of(f, off) is None
    assert np.array_equal(fieldmat.eye(f, 3), fieldmat.scalar_matrix(f, 3, f.one))


def test_add_sub_inverse():
    f = FiniteField(7, 3)
    rng = random.Random(5)
    a = fieldmat.to_array(f, _random(f, 3, 3, rng))
    b = fieldmat.to_array(f, _random(f, 3, 3, rng))
    assert np.array_equal(fieldmat.sub(f, fieldmat.add(f, a, b), b), a)
