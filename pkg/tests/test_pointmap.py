import itertools
import random

import pytest

from cubeblocks.census import BoundaryConditions, count_configs
from cubeblocks.errors import ResourceLimitError
from cubeblocks.fields import FiniteField
from cubeblocks.lattice import BrickSpec, LatticeSpec, assemble_block, default_order
from cubeblocks.matrices import RingMatrix, rank, row_vec_mul
from cubeblocks.pointmap import (
    brute_force_census, check_operator_laws, materialize_map, point_to_vector,
    propagate_configuration, vector_to_point,
)

F2 = FiniteField(2)
F3 = FiniteField(3)


def test_point_vector_roundtrip():
    for f in (F2, F3, FiniteField(2, 2)):
        for idx in range(min(f.q ** 3, 64)):
            v = point_to_vector(f, idx, 3)
            assert vector_to_point(f, v) == idx


def test_operator_laws_hold_for_invertible_maps():
    rng = random.Random(1)
    mats = []
    for n in (2, 3):
        while True:
            m = RingMatrix(F2, n, n, [rng.randrange(2) for _ in range(n * n)])
            if rank(m) == n:
                break
        mats.append(m)
    ok, witness = check_operator_laws(mats)
    assert ok, witness


def test_image_size_of_singular_map():
    m = RingMatrix.from_rows(F2, [[1, 1], [1, 1]])
    assert materialize_map(m).image_size() == 2


def test_map_guard():
    f = FiniteField(2, 8)
    big = RingMatrix.identity(f, 4)
    with pytest.raises(ResourceLimitError):
        materialize_map(big, guard=100)


def test_brute_force_census_is_q_power():
    rng = random.Random(3)
    brick = BrickSpec.random(F3, 2, (1, 1), rng)
    blk, prof = assemble_block(brick, LatticeSpec(2, l=2))
    for tags in itertools.product(("Periodic", "ZeroInput", "Free"), repeat=2):
        cc = brute_force_census(blk, prof, BoundaryConditions(tags))
        assert cc.q == 3
        assert cc == count_configs(blk, prof, BoundaryConditions(tags))


def test_interior_determinism():
    # stepping the local dynamics vertex by vertex equals applying the
    # assembled block to the input row vector
    rng = random.Random(5)
    for d, l in ((2, 2), (3, 2), (2, 3)):
        brick = BrickSpec.random(F2, d, (1,) * d, rng)
        spec = LatticeSpec(d, l=l)
        blk, prof = assemble_block(brick, spec)
        order = default_order(spec)
        n = blk.rows
        for idx in range(2 ** n):
            x = point_to_vector(F2, idx, n)
            assert propagate_configuration(brick, spec, prof, order, x) \
                == row_vec_mul(x, blk)
