import itertools
import random

import pytest

from cubeblocks.errors import InputError
from cubeblocks.fields import FiniteField
from cubeblocks.lattice import (
    BrickSpec, LatticeSpec, ThickProfile, assemble_block, check_linear_extension,
    default_order, embed_brick_at, enumerate_lines, evolve,
    random_linear_extension,
)
from cubeblocks.matrices import RingMatrix

F2 = FiniteField(2)
F4 = FiniteField(2, 2)


# ----------------------------------------------------------------------
# geometry bookkeeping
# ----------------------------------------------------------------------

def test_lines_per_axis():
    spec = LatticeSpec(3, edges=(2, 3, 4))
    assert spec.lines_per_axis(0) == 12
    assert spec.lines_per_axis(1) == 8
    assert spec.lines_per_axis(2) == 6


def test_profile_total_dimension():
    spec = LatticeSpec(3, l=2, thin_dims=(1, 2, 3))
    prof = ThickProfile(spec)
    assert prof.total == 4 * 1 + 4 * 2 + 4 * 3
    assert tuple(prof.block_profile.sizes) == (4, 8, 12)


def test_position_is_injective_per_axis():
    spec = LatticeSpec(3, l=2)
    prof = ThickProfile(spec)
    for axis in range(3):
        seen = {prof.position(axis, v) for v in spec.vertices()}
        assert len(seen) == 4


def test_spec_json_roundtrip():
    spec = LatticeSpec(3, edges=(2, 3, 2), thin_dims=(1, 2, 1))
    back = LatticeSpec.from_json(spec.to_json())
    assert back.edges == spec.edges and back.thin_dims == spec.thin_dims


def test_brick_json_roundtrip():
    rng = random.Random(0)
    brick = BrickSpec.random(F4, 3, (1, 1, 1), rng)
    back = BrickSpec.from_json(brick.to_json())
    assert back.matrix == brick.matrix and back.thin_dims == brick.thin_dims


# ----------------------------------------------------------------------
# linear extensions of the product order
# ----------------------------------------------------------------------

def test_default_order_is_a_linear_extension():
    spec = LatticeSpec(3, l=3)
    check_linear_extension(spec, default_order(spec))


def test_bad_order_rejected():
    spec = LatticeSpec(2, l=2)
    bad = [(1, 1), (0, 0), (0, 1), (1, 0)]
    with pytest.raises(InputError):
        check_linear_extension(spec, bad)


def test_assembly_independent_of_linear_extension():
    rng = random.Random(7)
    for field, d, l in [(F2, 2, 3), (F4, 2, 2), (F2, 3, 2), (F4, 3, 2)]:
        brick = BrickSpec.random(field, d, (1,) * d, rng)
        spec = LatticeSpec(d, l=l)
        base, _ = assemble_block(brick, spec)
        for _ in range(5):
            order = random_linear_extension(spec, rng)
            blk, _ = assemble_block(brick, spec, order=order)
            assert blk == base


# ----------------------------------------------------------------------
# assembly structure
# ----------------------------------------------------------------------

def test_embed_identity_off_support():
    rng = random.Random(9)
    brick = BrickSpec.random(F2, 2, (1, 1), rng)
    prof = enumerate_lines(LatticeSpec(2, l=3))
    m = embed_brick_at(brick, (1, 2), prof)
    touched = {prof.position(0, (1, 2)), prof.position(1, (1, 2)) }
    for i in range(m.rows):
        for j in range(m.cols):
            if i not in touched and i == j:
                assert m[i, j] == F2.one
            elif i not in touched:
                assert m[i, j] == F2.zero


def test_identity_brick_gives_identity_block():
    brick = BrickSpec(3, (1, 1, 1), RingMatrix.identity(F2, 3))
    blk, prof = assemble_block(brick, LatticeSpec(3, l=2))
    assert blk == RingMatrix.identity(F2, prof.total)


def test_direct_sum_brick_blocks_do_not_mix():
    # a brick that maps each thin space to itself yields a block that is
    # block diagonal with respect to the axis slots
    rng = random.Random(11)
    m = RingMatrix.zeros(F4, 2, 2)
    m[0, 0] = F4.sample_nonzero(rng)
    m[1, 1] = F4.sample_nonzero(rng)
    brick = BrickSpec(2, (1, 1), m)
    blk, prof = assemble_block(brick, LatticeSpec(2, l=2))
    bp = prof.block_profile
    for i in range(2):
        for j in range(2):
            if i != j:
                sub = blk.submatrix(bp.block_range(i), bp.block_range(j))
                assert sub == RingMatrix.zeros(F4, 2, 2)


def test_field_and_generic_paths_agree():
    # the numpy path handles plain fields; polynomial rings exercise the
    # generic path, so compare them through a specialization
    rng = random.Random(13)
    for field, d, l in [(F4, 2, 3), (FiniteField(3, 2), 3, 2)]:
        brick = BrickSpec.random(field, d, (1,) * d, rng)
        spec = LatticeSpec(d, l=l)
        fast, prof = assemble_block(brick, spec)
        from cubeblocks.lattice import _assemble_generic
        slow = _assemble_generic(brick, spec, prof, default_order(spec))
        assert fast == slow


def test_evolve_dimensions():
    rng = random.Random(15)
    brick = BrickSpec.random(F2, 2, (1, 1), rng)
    stages = evolve(brick, 3, edge=2)
    assert [blk.rows for blk, _ in stages] == [4, 8, 16]
