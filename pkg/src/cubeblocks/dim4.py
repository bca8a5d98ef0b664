"""Four-dimensional blocks via chain reduction to three dimensions.

A 4x4 brick repeated l times along the fourth axis, with the axis-4
boundary condition folded in, acts like a 3x3 brick whose entries live
in a commutative algebra of l x l matrices: circulants for the periodic
condition, upper triangular Toeplitz matrices for the zero-input one.
The stratification of the hypercube block into independent 3D layers is
verified through the same conjugation identity as the scalar case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError, SingularMatrixError
from .fields import FiniteField
from .identity import Verdict
from .lattice import LatticeSpec, BrickSpec, assemble_block, evolve
from .matrices import RingMatrix, mat_det, mat_inverse
from .census import BoundaryConditions, count_configs
from . import decomp3d

CASES = ("Periodic4", "ZeroInput4")


class MatrixAlgebra:
    """l x l matrices over a field as a ring of elements (not assumed
    commutative; commutativity of the reduced entries is checked where
    the theory requires it)."""

    is_field = False

    def __init__(self, field: FiniteField, l: int):
        self.field = field
        self.l = l
        self.char = field.p
        self.zero = RingMatrix.zeros(field, l, l)
        self.one = RingMatrix.identity(field, l)

    def scalar(self, c) -> RingMatrix:
        return RingMatrix.scalar(self.field, self.l, c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a @ b

    def __eq__(self, other):
        return (isinstance(other, MatrixAlgebra)
                and (self.field, self.l) == (other.field, other.l))

    def __hash__(self):
        return hash(("MatrixAlgebra", self.field, self.l))

    def __repr__(self):
        return f"MatrixAlgebra({self.field!r}, {self.l})"


@dataclass
class Brick4:
    """A 4x4 brick with the split view used by the chain reduction."""
    matrix: RingMatrix

    def __post_init__(self):
        if self.matrix.rows != 4 or self.matrix.cols != 4:
            raise InputError("the 4D brick must be 4x4")

    @property
    def field(self) -> FiniteField:
        return self.matrix.ring

    @property
    def k(self) -> RingMatrix:
        return self.matrix.submatrix(range(3), range(3))

    @property
    def l_col(self) -> list:
        return [self.matrix[i, 3] for i in range(3)]

    @property
    def m_row(self) -> list:
        return [self.matrix[3, j] for j in range(3)]

    @property
    def b44(self):
        return self.matrix[3, 3]

    @classmethod
    def random(cls, field: FiniteField, rng: random.Random) -> "Brick4":
        return cls(RingMatrix(field, 4, 4,
                              [field.sample(rng) for _ in range(16)]))


def shift_matrix(field: FiniteField, l: int, case: str) -> RingMatrix:
    """Superdiagonal of ones; the periodic case closes the cycle with a
    lower-left one, the zero-input case is nilpotent."""
    if case not in CASES:
        raise InputError(f"unknown chain case {case!r}")
    t = RingMatrix.zeros(field, l, l)
    for i in range(l - 1):
        t[i, i + 1] = field.one
    if case == "Periodic4":
        t[l - 1, 0] = field.one
    return t


def is_circulant(m: RingMatrix) -> bool:
    l = m.rows
    return all(m[i, j] == m[0, (j - i) % l] for i in range(l) for j in range(l))


def is_upper_toeplitz(m: RingMatrix) -> bool:
    l = m.rows
    return all(m[i, j] == (m[0, j - i] if j >= i else m.ring.zero)
               for i in range(l) for j in range(l))


@dataclass
class AlgebraElement:
    matrix: RingMatrix
    tag: str

    @property
    def first_row(self) -> list:
        return self.matrix.row(0)

    def __post_init__(self):
        ok = {"Circulant": is_circulant, "UpperToeplitz": is_upper_toeplitz,
              "General": lambda m: True}[self.tag](self.matrix)
        if not ok:
            raise InputError(f"matrix does not match the {self.tag} pattern")


@dataclass
class Reduced3D:
    """3x3 brick over the chain algebra, plus structure bookkeeping."""
    algebra: MatrixAlgebra
    entries: list          # 3x3 nested list of RingMatrix over the field
    case: str
    l: int

    def tagged(self) -> list:
        tag = "Circulant" if self.case == "Periodic4" else "UpperToeplitz"
        return [[AlgebraElement(x, tag) for x in row] for row in self.entries]

    def brick_over_algebra(self) -> BrickSpec:
        return BrickSpec(3, (1, 1, 1),
                         RingMatrix.from_rows(self.algebra, self.entries))

    def brick_over_field(self) -> BrickSpec:
        """The same brick flattened to a 3l x 3l field matrix with thin
        dimensions (l, l, l)."""
        field = self.algebra.field
        l = self.l
        out = RingMatrix.zeros(field, 3 * l, 3 * l)
        for i in range(3):
            for j in range(3):
                out.set_block(i * l, j * l, self.entries[i][j])
        return BrickSpec(3, (l, l, l), out)


def reduce_chain_4d(brick: Brick4, l: int, case: str) -> Reduced3D:
    """Fold a length-l chain of 4x4 bricks along the fourth axis into a
    3x3 brick with entries in the algebra generated by the shift."""
    field = brick.field
    if case == "Periodic4" and field.pow(brick.b44, l) == field.one:
        raise SingularMatrixError(
            "b44 is an l-th root of unity; the chain cannot be folded")
    t = shift_matrix(field, l, case)
    resolvent = RingMatrix.identity(field, l) - t.scalar_mul(brick.b44)
    w = mat_inverse(resolvent) @ t
    entries = []
    lcol, mrow = brick.l_col, brick.m_row
    for i in range(3):
        row = []
        for j in range(3):
            coeff = field.mul(lcol[i], mrow[j])
            row.append(RingMatrix.scalar(field, l, brick.k[i, j])
                       + w.scalar_mul(coeff))
        entries.append(row)
    reduced = Reduced3D(MatrixAlgebra(field, l), entries, case, l)
    reduced.tagged()  # pattern check per case
    for x in (y for row in entries for y in row):
        for z in (y for row in entries for y in row):
            if x @ z != z @ x:
                raise RuntimeError("reduced entries fail to commute")
    return reduced


def circulant_det_charp(field: FiniteField, first_row: list, size: int):
    """Determinant of the circulant with the given first row: when the
    size is a power of the characteristic, it is the size-th power of
    the row sum; otherwise fall back to plain elimination."""
    if len(first_row) != size:
        raise InputError("first row length must equal the size")
    s = size
    while s % field.p == 0:
        s //= field.p
    if s != 1:
        m = RingMatrix.from_rows(
            field, [[first_row[(j - i) % size] for j in range(size)]
                    for i in range(size)])
        return mat_det(m)
    total = field.zero
    for x in first_row:
        total = field.add(total, x)
    return field.pow(total, size)


def _row_sum_image(brick: Brick4, case: str):
    """Image of each reduced entry under the algebra homomorphism that
    kills the shift structure: the row sum for circulants (shift -> 1),
    the diagonal entry for triangular Toeplitz (shift -> 0)."""
    field = brick.field
    if case == "Periodic4":
        w_img = field.div(field.one, field.sub(field.one, brick.b44))
    else:
        w_img = field.zero
    grid = []
    for i in range(3):
        row = []
        for j in range(3):
            coeff = field.mul(brick.l_col[i], brick.m_row[j])
            row.append(field.add(brick.k[i, j], field.mul(coeff, w_img)))
        grid.append(row)
    return grid


def nondegeneracy_4d(brick: Brick4, case: str, n: int) -> bool:
    """Whether the folded brick satisfies the 3D nondegeneracy condition
    for an edge of length 2^n, computed two ways: the scalar inequality
    through the structure-killing homomorphism, and the determinant of
    the algebra element itself."""
    field = brick.field
    if field.p != 2:
        raise InputError("the nondegeneracy criterion is for characteristic 2")
    l = 2 ** n
    if case == "Periodic4" and field.pow(brick.b44, l) == field.one:
        raise SingularMatrixError(
            "b44 is an l-th root of unity; the chain is degenerate")
    grid = _row_sum_image(brick, case)
    scalar_diff = decomp3d.mixed_product_difference(field, grid)
    via_scalar = scalar_diff != field.zero
    reduced = reduce_chain_4d(brick, l, case)
    alg = reduced.algebra
    d_elem = decomp3d.mixed_product_difference(alg, reduced.entries)
    via_det = mat_det(d_elem) != field.zero
    if via_scalar != via_det:
        raise RuntimeError("nondegeneracy routes disagree")
    return via_det


def verify_stratification(brick: Brick4, n: int, case: str) -> decomp3d.DecompositionReport:
    """Hypercube of edge 2^n with b44 = 0: the block splits into 2^n
    independent 3D layers, each decomposing per the cube identity with
    brick entries (b_ij + b_i4 b_4j)^(2^n) (periodic) or b_ij^(2^n)
    (zero-input)."""
    field = brick.field
    if field.p != 2:
        raise InputError("stratification is verified in characteristic 2")
    if brick.b44 != field.zero:
        raise InputError("the stratification identity assumes b44 = 0")
    if n > 2:
        raise InputError("step count capped at 2 for desk-scale runs")
    l = 2 ** n
    layers = l
    reduced = reduce_chain_4d(brick, l, case)
    alg = reduced.algebra
    e = 2 ** n
    # scalar-power law: every algebra element to the 2^n-th is scalar
    for row in reduced.entries:
        for x in row:
            acc = x
            for _ in range(n):
                acc = acc @ acc
            if not acc.is_scalar():
                return decomp3d.DecompositionReport(
                    [], e, Verdict(False, witness={"failed": "scalar power"}))
    # predicted per-layer brick entries
    def predicted(i, j):
        coeff = field.mul(brick.l_col[i], brick.m_row[j]) \
            if case == "Periodic4" else field.zero
        return field.pow(field.add(brick.k[i, j], coeff), e)
    # evolve the algebra-valued brick and check the conjugation identity
    # at each step's brick (the cube identity over the algebra)
    current = [[x for x in row] for row in reduced.entries]
    for step in range(n):
        blk, prof = decomp3d.assemble_cube(alg, current, 2)
        basis = decomp3d.thick_basis_matrices(alg, current)
        p_full = decomp3d._stack_basis(alg, [m.to_rows() for m in basis.as_list()])
        sigma = decomp3d._sigma_generic(alg, current)
        if p_full @ blk != sigma @ p_full:
            return decomp3d.DecompositionReport(
                [], e, Verdict(False, witness={"failed": "conjugation",
                                               "step": step}))
        current = [[alg.mul(current[i][j], current[i][j]) for j in range(3)]
                   for i in range(3)]
    # after n steps every entry must be the predicted scalar
    for i in range(3):
        for j in range(3):
            if current[i][j] != alg.scalar(predicted(i, j)):
                return decomp3d.DecompositionReport(
                    [], e, Verdict(False, witness={
                        "failed": "layer entries", "entry": [i, j]}))
    census = decomp3d.evolution_census_closed_form("3d-generic", n)
    summands = [("Brick", layers * census.counts[0]),
                ("TransposedBrick", layers * census.counts[1])]
    return decomp3d.DecompositionReport(
        summands, e, Verdict(True, details={"layers": layers, "case": case}),
        details={"layers": layers,
                 "layer_counts": list(census.counts),
                 "per_layer_entries": [[predicted(i, j) for j in range(3)]
                                       for i in range(3)]})


def cross_check_4d(brick: Brick4, case: str,
                   bcs3: BoundaryConditions) -> Verdict:
    """Count permitted configurations two ways for the 2x2x2x2 cube:
    directly on the genuine 4D block with the axis-4 condition imposed,
    and on the folded 3D block over the chain algebra."""
    field = brick.field
    l = 2
    b4 = BrickSpec(4, (1, 1, 1, 1), brick.matrix)
    spec4 = LatticeSpec(4, l=2)
    blk4, prof4 = assemble_block(b4, spec4)
    tag4 = "Periodic" if case == "Periodic4" else "ZeroInput"
    bcs4 = BoundaryConditions(tuple(bcs3.tags) + (tag4,))
    count4 = count_configs(blk4, prof4, bcs4)
    reduced = reduce_chain_4d(brick, l, case)
    b3 = reduced.brick_over_field()
    spec3 = LatticeSpec(3, l=2, thin_dims=(l, l, l))
    blk3, prof3 = assemble_block(b3, spec3)
    count3 = count_configs(blk3, prof3, bcs3)
    if count4.e != count3.e:
        return Verdict(False, witness={"bcs": list(bcs3.tags), "case": case,
                                       "direct": count4.e, "reduced": count3.e})
    return Verdict(True, details={"exponent": count4.e, "case": case,
                                  "bcs": list(bcs3.tags)})
