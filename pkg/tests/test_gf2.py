"""The bit-packed kernels must agree entry-for-entry with the generic path."""

import random

from cubeblocks.fields import FiniteField
from cubeblocks.gf2 import (
    gf2_matmul, gf2_rank, gf2_row_kernel, gf2_row_mul, gf2_rref,
    pack_rows, unpack_rows,
)
from cubeblocks.matrices import RingMatrix, rank, row_kernel, row_vec_mul, rref

F2 = FiniteField(2)


def _random(nr, nc, rng):
    return RingMatrix(F2, nr, nc, [rng.randrange(2) for _ in range(nr * nc)])


def test_pack_roundtrip():
    rng = random.Random(1)
    for _ in range(20):
        m = _random(rng.randrange(1, 9), rng.randrange(1, 9), rng)
        assert unpack_rows(pack_rows(m), m.cols, F2) == m


def test_matmul_matches_generic():
    rng = random.Random(2)
    for _ in range(50):
        n, k, c = (rng.randrange(1, 9) for _ in range(3))
        a, b = _random(n, k, rng), _random(k, c, rng)
        got = unpack_rows(gf2_matmul(pack_rows(a), pack_rows(b)), c, F2)
        assert got == a @ b


def test_row_mul_matches_generic():
    rng = random.Random(3)
    for _ in range(50):
        k, c = rng.randrange(1, 9), rng.randrange(1, 9)
        b = _random(k, c, rng)
        x = [rng.randrange(2) for _ in range(k)]
        packed_x = sum(bit << i for i, bit in enumerate(x))
        got = gf2_row_mul(packed_x, pack_rows(b))
        want = row_vec_mul(x, b)
        assert [(got >> j) & 1 for j in range(c)] == want


def test_rref_rank_kernel_match_generic():
    rng = random.Random(4)
    for _ in range(100):
        nr, nc = rng.randrange(1, 10), rng.randrange(1, 10)
        m = _random(nr, nc, rng)
        packed = pack_rows(m)
        red, pivots = gf2_rref(packed, nc)
        gen_red, gen_pivots = rref(m)
        assert unpack_rows(red, nc, F2) == gen_red
        assert pivots == gen_pivots
        assert gf2_rank(packed, nc) == rank(m)
        ker = gf2_row_kernel(packed, nc)
        gen_ker = row_kernel(m)
        assert len(ker) == len(gen_ker)
        for packed_row in ker:
            row = [(packed_row >> i) & 1 for i in range(nr)]
            assert all(x == 0 for x in row_vec_mul(row, m))
