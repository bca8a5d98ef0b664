import random

import pytest

from cubeblocks import decomp3d as D
from cubeblocks.errors import InputError
from cubeblocks.fields import FiniteField
from cubeblocks.matrices import RingMatrix, mat_det


# ----------------------------------------------------------------------
# line ordering
# ----------------------------------------------------------------------

def test_resolved_ordering_regenerates():
    assert D.resolve_line_ordering() == D.RESOLVED_LINE_ORDERING


# ----------------------------------------------------------------------
# 2x2 block
# ----------------------------------------------------------------------

def test_2d_symbolic():
    rep = D.verify_decomposition_2d("symbolic")
    assert rep.verdict.ok and rep.summands == [("Brick", 2)]


def test_2d_sampled_and_degenerate():
    f = FiniteField(2, 16)
    rep = D.verify_decomposition_2d("sampled", field=f, seed=1)
    assert rep.verdict.ok and not rep.degenerate
    rep = D.verify_decomposition_2d("sampled", field=f,
                                    entries=[[3, 0], [5, 7]])
    assert rep.degenerate


# ----------------------------------------------------------------------
# cube block, generic brick
# ----------------------------------------------------------------------

def test_cube_symbolic():
    rep = D.verify_decomposition_3d("symbolic")
    assert rep.verdict.ok
    assert rep.summands == [("TransposedBrick", 1), ("Brick", 3)]
    assert rep.frobenius_power == 2


def test_cube_sampled():
    rep = D.verify_decomposition_3d("sampled", seed=2)
    assert rep.verdict.ok


def test_cube_wrong_ordering_fails():
    bad = ((1, 0, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3))
    rep = D.verify_decomposition_3d("symbolic", ordering=bad)
    assert not rep.verdict.ok


def test_cube_routes_symmetric_inputs():
    f = FiniteField(2, 16)
    rng = random.Random(3)
    vals = {v: f.sample_nonzero(rng) for v in D.SYM_VARS}
    a = [[vals[f"a{min(i, j)}{max(i, j)}"] for j in (1, 2, 3)] for i in (1, 2, 3)]
    rep = D.verify_decomposition_3d("sampled", field=f, entries=a)
    assert rep.verdict.ok
    assert rep.details.get("routed_from") == "cube-decomposition"


def test_cube_degenerate_when_both_products_vanish():
    f = FiniteField(2, 16)
    a = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    rep = D.verify_decomposition_3d("sampled", field=f, entries=a)
    assert rep.degenerate


def test_thick_basis_determinants_sampled():
    f = FiniteField(2, 16)
    rng = random.Random(4)
    a = [[f.sample_nonzero(rng) for _ in range(3)] for _ in range(3)]
    basis = D.thick_basis_matrices(f, a)
    pos = f.mul(f.mul(a[0][1], a[1][2]), a[2][0])
    neg = f.mul(f.mul(a[0][2], a[2][1]), a[1][0])
    want = f.pow(f.add(pos, neg), 2)
    for m in basis.as_list():
        assert mat_det(m) == want


# ----------------------------------------------------------------------
# block structure for general characteristic
# ----------------------------------------------------------------------

def test_scalar_structure_char2_symbolic():
    v = D.verify_scalar_structure(2)
    assert v.ok and v.details["mode"] == "symbolic"


def test_scalar_structure_sampled_p3():
    v = D.verify_scalar_structure(3, trials=4, seed=5)
    assert v.ok
    assert v.details["scalar_exponent"] == [3]


def test_spectrum_char2_symbolic():
    v = D.verify_triple_product_spectrum(2)
    assert v.ok and v.details["multiplicities"] == [1, 3]


def test_spectrum_sampled_p3():
    v = D.verify_triple_product_spectrum(3, trials=4, seed=5)
    assert v.ok and v.details["multiplicities"] == [3, 6]
    assert v.log2_failure_bound < 0


# ----------------------------------------------------------------------
# symmetric bricks
# ----------------------------------------------------------------------

def _symmetrizable_brick(f, rng):
    while True:
        a11, a12, a22, a23, a33, a21, a32, a31 = (
            f.sample_nonzero(rng) for _ in range(8))
        a13 = f.div(f.mul(f.mul(a12, a23), a31), f.mul(a32, a21))
        if a13 != f.zero:
            return RingMatrix.from_rows(
                f, [[a11, a12, a13], [a21, a22, a23], [a31, a32, a33]])


def test_symmetrize_brick():
    f = FiniteField(2, 8)
    rng = random.Random(6)
    for _ in range(10):
        m = _symmetrizable_brick(f, rng)
        g, sym = D.symmetrize_brick(f, m)
        assert g[0] == f.one
        for i in range(3):
            for j in range(3):
                assert sym[i, j] == sym[j, i]


def test_symmetrize_rejects_generic_brick():
    f = FiniteField(2, 8)
    rng = random.Random(7)
    while True:
        a = [[f.sample_nonzero(rng) for _ in range(3)] for _ in range(3)]
        if D.mixed_product_difference(f, a) != f.zero:
            break
    with pytest.raises(InputError):
        D.symmetrize_brick(f, RingMatrix.from_rows(f, a))


def test_distinguished_vector_recomputation():
    rep = D.g3_typo_report()
    assert rep["printed_identical"]
    assert rep["g2_matches_printed"]
    assert not rep["g3_matches_printed"]
    assert rep["typo_confirmed"]


def test_symmetric_simple_symbolic():
    rep = D.verify_symmetric_decomposition("simple")
    assert rep.verdict.ok
    assert rep.summands == [("SimpleSymmetric", 2), ("DoubleBrick", 1)]


def test_symmetric_double_symbolic():
    rep = D.verify_symmetric_decomposition("double")
    assert rep.verdict.ok
    assert rep.summands == [("SimpleSymmetric", 4), ("DoubleBrick", 2)]


def test_symmetric_sampled():
    rep = D.verify_symmetric_decomposition("simple", mode="sampled", seed=8)
    assert rep.verdict.ok and not rep.degenerate


# ----------------------------------------------------------------------
# evolution counts
# ----------------------------------------------------------------------

def test_closed_forms_match_recurrence():
    for case in ("2d", "3d-generic", "3d-symmetric"):
        for n in range(11):
            D.evolution_census_closed_form(case, n)


def test_closed_form_values():
    assert D.evolution_census_closed_form("2d", 3).counts == (8,)
    assert D.evolution_census_closed_form("3d-generic", 2).counts == (10, 6)
    assert D.evolution_census_closed_form("3d-symmetric", 2).counts == (8, 4)


def test_unknown_case_rejected():
    with pytest.raises(InputError):
        D.evolution_census_closed_form("4d", 1)


def test_detection():
    assert D.detect_evolution_summands("2d", 1, seed=9).ok
    assert D.detect_evolution_summands("2d", 2, seed=9).ok
    assert D.detect_evolution_summands("3d-generic", 1, seed=9).ok
    assert D.detect_evolution_summands("3d-symmetric", 1, seed=9).ok
