"""Decomposition structure of cubic blocks in low characteristic.

The p x p x p block of a generic 3 x 3 brick splits, over a suitable
basis of each thick space, into Frobenius-twisted copies of the brick
and its transpose; in characteristic 2 with the symmetric degeneration
it instead splits into simple and double summands.  This module builds
the explicit bases, verifies every claimed identity either symbolically
over polynomial rings or at random field specializations with reported
failure bounds, and tracks the summand censuses under iterated block
making.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InputError
from .fields import FiniteField, sqrt_char2
from .identity import Verdict, failure_bound_log2
from .lattice import LatticeSpec, BrickSpec, assemble_block
from .matrices import RingMatrix, charpoly, mat_det, rank, row_vec_mul
from .polys import MultiPoly, PolyRing
from . import fieldmat

GEN3_VARS = ("a11", "a12", "a13", "a21", "a22", "a23", "a31", "a32", "a33")
SYM_VARS = ("a11", "a12", "a13", "a22", "a23", "a33")

# Slot order of the four lines inside each thick space of the 2x2x2 cube
# that makes the printed eigenvector rows correct.  Resolved by searching
# all per-axis permutations at a random specialization and confirmed
# symbolically (see resolve_line_ordering and its regeneration test):
# the lexicographic transverse-coordinate order needs no permutation.
RESOLVED_LINE_ORDERING = ((0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3))


# ----------------------------------------------------------------------
# Brick grids and thick-space basis rows
# ----------------------------------------------------------------------

def generic_brick_ring(char: int = 2) -> tuple[PolyRing, list[list[MultiPoly]]]:
    ring = PolyRing(GEN3_VARS, char)
    grid = [[ring.gen(f"a{i}{j}") for j in (1, 2, 3)] for i in (1, 2, 3)]
    return ring, grid


def symmetric_brick_ring() -> tuple[PolyRing, list[list[MultiPoly]]]:
    ring = PolyRing(SYM_VARS, 2)
    g = lambda i, j: ring.gen(f"a{min(i, j)}{max(i, j)}")
    grid = [[g(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]
    return ring, grid


def grid_matrix(ring, grid) -> RingMatrix:
    return RingMatrix.from_rows(ring, grid)


def matrix_grid(m: RingMatrix) -> list[list]:
    return [[m[i, j] for j in range(3)] for i in range(3)]


def thick_basis_rows(ring, a) -> tuple[list, list, list]:
    """Rows (f, e1, e2, e3) of the three thick-space basis matrices, in
    printed slot order; a is a 3x3 nested list of ring elements."""
    mul, add = ring.mul, ring.add
    A = lambda i, j: a[i - 1][j - 1]
    m2 = mul

    # 2x2 combinations a_{i1 j1} a_{i2 j2} + a_{i3 j3} a_{i4 j4}
    def s(i1, j1, i2, j2, i3, j3, i4, j4):
        return add(m2(A(i1, j1), A(i2, j2)), m2(A(i3, j3), A(i4, j4)))

    z, one = ring.zero, ring.one
    t1 = [
        [m2(A(2, 1), A(3, 1)),
         m2(A(3, 1), s(2, 1, 3, 3, 2, 3, 3, 1)),
         m2(A(2, 1), s(2, 1, 3, 2, 2, 2, 3, 1)),
         m2(s(2, 1, 3, 3, 2, 3, 3, 1), s(2, 1, 3, 2, 2, 2, 3, 1))],
        [z, z, A(1, 2), s(1, 2, 3, 3, 1, 3, 3, 2)],
        [z, A(1, 3), z, s(1, 2, 2, 3, 1, 3, 2, 2)],
        [one, A(3, 3), A(2, 2), s(2, 2, 3, 3, 2, 3, 3, 2)],
    ]
    t2 = [
        [m2(A(1, 2), A(3, 2)),
         m2(A(3, 2), s(1, 2, 3, 3, 1, 3, 3, 2)),
         m2(A(1, 2), s(1, 1, 3, 2, 1, 2, 3, 1)),
         m2(s(1, 2, 3, 3, 1, 3, 3, 2), s(1, 1, 3, 2, 1, 2, 3, 1))],
        [one, A(3, 3), A(1, 1), s(1, 1, 3, 3, 1, 3, 3, 1)],
        [z, A(2, 3), z, s(1, 1, 2, 3, 1, 3, 2, 1)],
        [z, z, A(2, 1), s(2, 1, 3, 3, 2, 3, 3, 1)],
    ]
    t3 = [
        [m2(A(1, 3), A(2, 3)),
         m2(A(2, 3), s(1, 2, 2, 3, 1, 3, 2, 2)),
         m2(A(1, 3), s(1, 1, 2, 3, 1, 3, 2, 1)),
         m2(s(1, 2, 2, 3, 1, 3, 2, 2), s(1, 1, 2, 3, 1, 3, 2, 1))],
        [z, A(3, 2), z, s(1, 1, 3, 2, 1, 2, 3, 1)],
        [one, A(2, 2), A(1, 1), s(1, 1, 2, 2, 1, 2, 2, 1)],
        [z, z, A(3, 1), s(2, 1, 3, 2, 2, 2, 3, 1)],
    ]
    return t1, t2, t3


@dataclass
class ThickBasisSet:
    p1: RingMatrix
    p2: RingMatrix
    p3: RingMatrix

    def as_list(self):
        return [self.p1, self.p2, self.p3]


def _apply_ordering(rows, axis: int, ordering=RESOLVED_LINE_ORDERING):
    sigma = ordering[axis]
    out = []
    for row in rows:
        new = [None] * 4
        for k in range(4):
            new[sigma[k]] = row[k]
        out.append(new)
    return out


def thick_basis_matrices(ring, a, ordering=RESOLVED_LINE_ORDERING) -> ThickBasisSet:
    t1, t2, t3 = thick_basis_rows(ring, a)
    mats = []
    for axis, rows in enumerate((t1, t2, t3)):
        mats.append(RingMatrix.from_rows(ring, _apply_ordering(rows, axis, ordering)))
    return ThickBasisSet(*mats)


def mixed_product_difference(ring, a):
    """a12 a23 a31 - a13 a32 a21, the nondegeneracy element."""
    pos = ring.mul(ring.mul(a[0][1], a[1][2]), a[2][0])
    neg = ring.mul(ring.mul(a[0][2], a[2][1]), a[1][0])
    return ring.sub(pos, neg)


# ----------------------------------------------------------------------
# Cube assembly and full-basis conjugation identities
# ----------------------------------------------------------------------

def assemble_cube(ring, a, l: int, ordering="lex"):
    brick = BrickSpec(3, (1, 1, 1), grid_matrix(ring, a))
    spec = LatticeSpec(3, l=l)
    return assemble_block(brick, spec, ordering=ordering)


def _stack_basis(ring, per_space_rows) -> RingMatrix:
    """Rows of the three 4-row basis matrices embedded at their axis
    blocks, giving the 12x12 change-of-basis matrix."""
    n = 12
    out = RingMatrix.zeros(ring, n, n)
    for i, rows in enumerate(per_space_rows):
        for s, row in enumerate(rows):
            for k, x in enumerate(row):
                out[4 * i + s, 4 * i + k] = x
    return out


def _sigma_generic(ring, a) -> RingMatrix:
    """Target of the cube conjugation: slot f carries the transposed
    squared brick, slots e1..e3 each carry the squared brick."""
    out = RingMatrix.zeros(ring, 12, 12)
    for i in range(3):
        for j in range(3):
            sq = lambda x: ring.mul(x, x)
            out[4 * i + 0, 4 * j + 0] = sq(a[j][i])
            for s in (1, 2, 3):
                out[4 * i + s, 4 * j + s] = sq(a[i][j])
    return out


@dataclass
class DecompositionReport:
    summands: list
    frobenius_power: int
    verdict: Verdict
    degenerate: bool = False
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "summands": [[tag, mult] for tag, mult in self.summands],
            "frobenius_power": self.frobenius_power,
            "verdict": ("degenerate" if self.degenerate
                        else "verified" if self.verdict.ok else "falsified"),
            "ordering": [list(s) for s in RESOLVED_LINE_ORDERING],
            "report": self.verdict.to_json(),
            "details": self.details,
        }


def verify_decomposition_3d(mode: str = "symbolic", field: FiniteField | None = None,
                            entries=None, seed: int = 0,
                            ordering=RESOLVED_LINE_ORDERING) -> DecompositionReport:
    """Check that the 2x2x2 block of a 3x3 char-2 brick is conjugate, by
    the explicit thick bases, to (transposed squared brick) + 3 x
    (squared brick)."""
    summands = [("TransposedBrick", 1), ("Brick", 3)]
    if mode == "symbolic":
        ring, a = generic_brick_ring()
    elif mode == "sampled":
        if field is None:
            field = FiniteField(2, 16)
        if field.p != 2:
            raise InputError("the cube decomposition needs characteristic 2")
        ring = field
        if entries is None:
            rng = random.Random(seed)
            a = [[field.sample_nonzero(rng) for _ in range(3)] for _ in range(3)]
        else:
            a = [list(row) for row in entries]
        if mixed_product_difference(ring, a) == ring.zero:
            pos = ring.mul(ring.mul(a[0][1], a[1][2]), a[2][0])
            if pos != ring.zero:
                rep = verify_symmetric_decomposition(
                    "simple", mode="sampled", field=field, entries=a, seed=seed)
                rep.details["routed_from"] = "cube-decomposition"
                return rep
            return DecompositionReport(
                summands, 2, Verdict(True, details={"reason": "degenerate"}),
                degenerate=True,
                details={"reason": "both triple products vanish"})
    else:
        raise InputError(f"unknown mode {mode!r}")
    blk, _ = assemble_cube(ring, a, 2)
    basis = thick_basis_matrices(ring, a, ordering)
    p_full = _stack_basis(ring, [m.to_rows() for m in basis.as_list()])
    sigma = _sigma_generic(ring, a)
    lhs = p_full @ blk
    rhs = sigma @ p_full
    if lhs != rhs:
        bad = next((i, j) for i in range(12) for j in range(12)
                   if lhs[i, j] != rhs[i, j])
        return DecompositionReport(summands, 2, Verdict(False, witness={
            "entry": list(bad), "mode": mode}))
    details = {"mode": mode}
    if mode == "sampled":
        dets = [mat_det(m) for m in basis.as_list()]
        if any(d == ring.zero for d in dets):
            return DecompositionReport(
                summands, 2, Verdict(True, details={"reason": "degenerate"}),
                degenerate=True, details={"reason": "singular thick basis"})
        details["basis_dets_nonzero"] = True
    return DecompositionReport(summands, 2, Verdict(True, details=details),
                               details=details)


def verify_decomposition_2d(mode: str = "symbolic", field: FiniteField | None = None,
                            entries=None, seed: int = 0) -> DecompositionReport:
    """2x2 block: exact integer-coefficient form, then the char-2 split
    into two squared copies via the cleared basis (e1, e2, e1 R12, e2 R12)."""
    summands = [("Brick", 2)]
    if mode == "symbolic":
        zring = PolyRing(("a", "b", "c", "d"), 0)
        a, b, c, d = zring.gens()
        brick = BrickSpec(2, (1, 1), RingMatrix.from_rows(zring, [[a, b], [c, d]]))
        blk, _ = assemble_block(brick, LatticeSpec(2, l=2))
        two = zring.const(2)
        expected = RingMatrix.from_rows(zring, [
            [a * a, two * a * b * c, b * d, a * b * d + b * b * c],
            [zring.zero, a * a, b, a * b],
            [a * c, a * c * d + b * c * c, d * d, two * b * c * d],
            [c, c * d, zring.zero, d * d]])
        if blk != expected:
            bad = next((i, j) for i in range(4) for j in range(4)
                       if blk[i, j] != expected[i, j])
            return DecompositionReport(summands, 2, Verdict(
                False, witness={"entry": list(bad), "stage": "integer form"}))
        ring = PolyRing(("a", "b", "c", "d"), 2)
        a, b, c, d = ring.gens()
    else:
        if field is None:
            field = FiniteField(2, 16)
        ring = field
        if entries is None:
            rng = random.Random(seed)
            a, d = field.sample(rng), field.sample(rng)
            b, c = field.sample_nonzero(rng), field.sample_nonzero(rng)
        else:
            (a, b), (c, d) = entries
    brick = BrickSpec(2, (1, 1), RingMatrix.from_rows(ring, [[a, b], [c, d]]))
    blk, prof = assemble_block(brick, LatticeSpec(2, l=2))
    bp = prof.block_profile
    r12 = blk.submatrix(bp.block_range(0), bp.block_range(1))
    r21 = blk.submatrix(bp.block_range(1), bp.block_range(0))
    r11 = blk.submatrix(bp.block_range(0), bp.block_range(0))
    r22 = blk.submatrix(bp.block_range(1), bp.block_range(1))
    sq = lambda x: ring.mul(x, x)
    checks = {
        "r11_scalar": r11 == RingMatrix.scalar(ring, 2, sq(a)),
        "r22_scalar": r22 == RingMatrix.scalar(ring, 2, sq(d)),
        "pair_product_scalar":
            (r12 @ r21 == r21 @ r12 ==
             RingMatrix.scalar(ring, 2, ring.mul(sq(b), sq(c)))),
    }
    # cleared conjugation: rows (e1, e2, e1 R12, e2 R12); the second pair
    # carries a factor b^2 relative to the true basis, so the target has
    # b^2-scaled off-diagonal blocks
    p_hat = RingMatrix.zeros(ring, 4, 4)
    p_hat[0, 0] = ring.one
    p_hat[1, 1] = ring.one
    for j in range(2):
        p_hat[2, 2 + j] = r12[0, j]
        p_hat[3, 2 + j] = r12[1, j]
    z = ring.zero
    b2c2 = ring.mul(sq(b), sq(c))
    sigma_hat = RingMatrix.from_rows(ring, [
        [sq(a), z, ring.one, z],
        [z, sq(a), z, ring.one],
        [b2c2, z, sq(d), z],
        [z, b2c2, z, sq(d)]])
    checks["cleared_conjugation"] = (p_hat @ blk == sigma_hat @ p_hat)
    if mode == "sampled":
        if b == ring.zero or c == ring.zero:
            return DecompositionReport(
                summands, 2, Verdict(True, details={"reason": "degenerate"}),
                degenerate=True, details={"reason": "b or c vanishes"})
    if not all(checks.values()):
        failing = [k for k, v in checks.items() if not v]
        return DecompositionReport(summands, 2, Verdict(
            False, witness={"failing": failing, "mode": mode}))
    return DecompositionReport(summands, 2, Verdict(True, details={"mode": mode}),
                               details={"checks": sorted(checks)})


# ----------------------------------------------------------------------
# Line-ordering resolution
# ----------------------------------------------------------------------

def resolve_line_ordering(seed: int = 2026, m: int = 16):
    """Recover the slot order of the four lines in each thick space by
    requiring the printed basis rows to satisfy their defining
    eigenvector and transfer relations at a random specialization.

    The search factorizes: axis 1 from the triple-product eigenvector
    conditions, then axes 2 and 3 from the single-block transfers."""
    field = FiniteField(2, m)
    rng = random.Random(seed)
    while True:
        a = [[field.sample_nonzero(rng) for _ in range(3)] for _ in range(3)]
        if mixed_product_difference(field, a) != field.zero:
            break
    blk, prof = assemble_cube(field, a, 2)
    bp = prof.block_profile
    sub = lambda i, j: blk.submatrix(bp.block_range(i), bp.block_range(j))
    m_op = sub(0, 1) @ sub(1, 2) @ sub(2, 0)
    t1, t2, t3 = thick_basis_rows(field, a)
    sq = lambda x: field.mul(x, x)
    lam1 = sq(field.mul(field.mul(a[0][2], a[2][1]), a[1][0]))
    lam2 = sq(field.mul(field.mul(a[0][1], a[1][2]), a[2][0]))

    def permuted(row, sigma):
        out = [field.zero] * 4
        for k in range(4):
            out[sigma[k]] = row[k]
        return out

    def scaled(row, c):
        return [field.mul(c, x) for x in row]

    def transfer_ok(rows_from, s_from, rows_to, s_to, block, coeff_f, coeff_e):
        v = row_vec_mul(permuted(rows_from[0], s_from), block)
        if v != scaled(permuted(rows_to[0], s_to), coeff_f):
            return False
        return all(
            row_vec_mul(permuted(rows_from[k], s_from), block)
            == scaled(permuted(rows_to[k], s_to), coeff_e)
            for k in (1, 2, 3))

    solutions = []
    for s1 in itertools.permutations(range(4)):
        f = permuted(t1[0], s1)
        if row_vec_mul(f, m_op) != scaled(f, lam1):
            continue
        if not all(row_vec_mul(permuted(t1[k], s1), m_op)
                   == scaled(permuted(t1[k], s1), lam2) for k in (1, 2, 3)):
            continue
        for s2 in itertools.permutations(range(4)):
            if not transfer_ok(t1, s1, t2, s2, sub(0, 1),
                               sq(a[1][0]), sq(a[0][1])):
                continue
            for s3 in itertools.permutations(range(4)):
                if transfer_ok(t1, s1, t3, s3, sub(0, 2),
                               sq(a[2][0]), sq(a[0][2])):
                    solutions.append((s1, s2, s3))
    if len(solutions) != 1:
        raise RuntimeError(f"line-ordering search found {len(solutions)} solutions")
    return solutions[0]


# ----------------------------------------------------------------------
# Scalar structure and triple-product spectrum for p in {2, 3, 5, 7, 11}
# ----------------------------------------------------------------------

def _poly_coeffs_product(ring, roots_with_mult):
    """Coefficients (constant first) of prod (x - r)^mult over the ring;
    signs collapse in characteristic 2 and are tracked exactly otherwise."""
    coeffs = [ring.one]
    for root, mult in roots_with_mult:
        for _ in range(mult):
            nxt = [ring.zero] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = ring.add(nxt[i + 1], c)
                nxt[i] = ring.sub(nxt[i], ring.mul(root, c))
            coeffs = nxt
    return coeffs


def _sampled_cube_arrays(field, rng):
    a = [[field.sample_nonzero(rng) for _ in range(3)] for _ in range(3)]
    ring = field
    brick = BrickSpec(3, (1, 1, 1), grid_matrix(ring, a))
    spec = LatticeSpec(3, l=field.p)
    blk, prof = assemble_block(brick, spec)
    arr = fieldmat.to_array(field, blk)
    n = field.p ** 2
    blocks = {}
    for i in range(3):
        for j in range(3):
            blocks[i, j] = arr[i * n:(i + 1) * n, j * n:(j + 1) * n, :]
    return a, blocks, n


def _b3_failure_bound(p: int, field: FiniteField, trials: int) -> float:
    # entries of the block have degree <= p^3 in the brick entries; the
    # checked products are quadratic in those
    return failure_bound_log2(2 * p ** 3, field.q, trials)


def verify_scalar_structure(p: int, mode: str = "auto", trials: int = 32,
                            seed: int = 0, m: int = 16) -> Verdict:
    """Diagonal blocks R_ii = a_ii^p and scalar commuting pair products
    R_kl R_lk; the scalar's observed exponent is reported."""
    if p == 2 and mode in ("auto", "symbolic"):
        ring, a = generic_brick_ring()
        blk, prof = assemble_cube(ring, a, 2)
        bp = prof.block_profile
        sub = lambda i, j: blk.submatrix(bp.block_range(i), bp.block_range(j))
        sq = lambda x: ring.mul(x, x)
        for i in range(3):
            if sub(i, i) != RingMatrix.scalar(ring, 4, sq(a[i][i])):
                return Verdict(False, witness={"block": [i, i]})
        for k, l in ((0, 1), (0, 2), (1, 2)):
            s = ring.mul(sq(a[k][l]), sq(a[l][k]))
            if not (sub(k, l) @ sub(l, k) == sub(l, k) @ sub(k, l)
                    == RingMatrix.scalar(ring, 4, s)):
                return Verdict(False, witness={"pair": [k, l]})
        return Verdict(True, details={"mode": "symbolic", "p": 2,
                                      "scalar_exponent": 2})
    field = FiniteField(p, m)
    rng = random.Random(seed)
    exponents = set()
    for trial in range(trials):
        a, blocks, n = _sampled_cube_arrays(field, rng)
        for i in range(3):
            want = fieldmat.scalar_matrix(field, n, field.pow(a[i][i], p))
            if not np.array_equal(blocks[i, i], want):
                return Verdict(False, witness={"trial": trial, "block": [i, i],
                                               "entries": a})
        for k, l in ((0, 1), (0, 2), (1, 2)):
            fwd = fieldmat.matmul(field, blocks[k, l], blocks[l, k])
            bwd = fieldmat.matmul(field, blocks[l, k], blocks[k, l])
            if not np.array_equal(fwd, bwd):
                return Verdict(False, witness={"trial": trial, "pair": [k, l],
                                               "failed": "commutation"})
            s = fieldmat.scalar_of(field, fwd)
            if s is None:
                return Verdict(False, witness={"trial": trial, "pair": [k, l],
                                               "failed": "scalar"})
            base = field.mul(a[k][l], a[l][k])
            t = next((t for t in range(1, 2 * p + 1)
                      if field.pow(base, t) == s), None)
            if t is None:
                return Verdict(False, witness={"trial": trial, "pair": [k, l],
                                               "failed": "exponent"})
            exponents.add(t)
    return Verdict(True, log2_failure_bound=_b3_failure_bound(p, field, trials),
                   details={"mode": "sampled", "p": p, "trials": trials,
                            "scalar_exponent": sorted(exponents)})


def verify_triple_product_spectrum(p: int, mode: str = "auto", trials: int = 32,
                                   seed: int = 0, m: int = 16) -> Verdict:
    """Quadratic minimal polynomial of R12 R23 R31 with eigenvalue
    multiplicities p(p-1)/2 and p(p+1)/2."""
    mult_low = p * (p - 1) // 2
    mult_high = p * (p + 1) // 2
    if p == 2 and mode in ("auto", "symbolic"):
        ring, a = generic_brick_ring()
        blk, prof = assemble_cube(ring, a, 2)
        bp = prof.block_profile
        sub = lambda i, j: blk.submatrix(bp.block_range(i), bp.block_range(j))
        m_op = sub(0, 1) @ sub(1, 2) @ sub(2, 0)
        sq = lambda x: ring.mul(x, x)
        lam1 = sq(ring.mul(ring.mul(a[0][2], a[2][1]), a[1][0]))
        lam2 = sq(ring.mul(ring.mul(a[0][1], a[1][2]), a[2][0]))
        id4 = RingMatrix.identity(ring, 4)
        quad = (m_op - id4.scalar_mul(lam1)) @ (m_op - id4.scalar_mul(lam2))
        if quad != RingMatrix.zeros(ring, 4, 4):
            return Verdict(False, witness={"failed": "minimal polynomial"})
        # multiplicities: the characteristic polynomial factors as
        # (x - lam1)(x - lam2)^3, which together with the quadratic
        # annihilator forces multiplicities (1, 3)
        cp = charpoly(m_op)
        want = _poly_coeffs_product(ring, [(lam1, 1), (lam2, 3)])
        if cp != want:
            return Verdict(False, witness={"failed": "characteristic polynomial"})
        return Verdict(True, details={"mode": "symbolic", "p": 2,
                                      "multiplicities": [1, 3]})
    field = FiniteField(p, m)
    rng = random.Random(seed)
    for trial in range(trials):
        a, blocks, n = _sampled_cube_arrays(field, rng)
        m_arr = fieldmat.matmul(field, fieldmat.matmul(
            field, blocks[0, 1], blocks[1, 2]), blocks[2, 0])
        lam1 = field.pow(field.mul(field.mul(a[0][2], a[2][1]), a[1][0]), p)
        lam2 = field.pow(field.mul(field.mul(a[0][1], a[1][2]), a[2][0]), p)
        d1 = fieldmat.sub(field, m_arr, fieldmat.scalar_matrix(field, n, lam1))
        d2 = fieldmat.sub(field, m_arr, fieldmat.scalar_matrix(field, n, lam2))
        if np.any(fieldmat.matmul(field, d1, d2)):
            return Verdict(False, witness={"trial": trial,
                                           "failed": "minimal polynomial"})
        r2 = fieldmat.rank(field, d2)
        r1 = fieldmat.rank(field, d1)
        if (r2, r1) != (mult_low, mult_high):
            return Verdict(False, witness={
                "trial": trial, "failed": "multiplicities",
                "observed": [r2, r1], "expected": [mult_low, mult_high]})
    return Verdict(True, log2_failure_bound=_b3_failure_bound(p, field, trials),
                   details={"mode": "sampled", "p": p, "trials": trials,
                            "multiplicities": [mult_low, mult_high]})


# ----------------------------------------------------------------------
# Symmetric (non-diagonalizable) case
# ----------------------------------------------------------------------

def symmetrize_brick(field: FiniteField, a: RingMatrix):
    """Gauge (1, sqrt(a21/a12), sqrt(a31/a13)) making the brick symmetric;
    requires the two triple products to agree and be nonzero."""
    if field.p != 2:
        raise InputError("symmetrization needs characteristic 2")
    grid = matrix_grid(a)
    pos = field.mul(field.mul(grid[0][1], grid[1][2]), grid[2][0])
    neg = field.mul(field.mul(grid[0][2], grid[2][1]), grid[1][0])
    if pos != neg:
        raise InputError("triple products differ; brick is not symmetrizable")
    if pos == field.zero:
        raise InputError("triple products vanish; brick is not symmetrizable")
    g = (field.one,
         sqrt_char2(field, field.div(grid[1][0], grid[0][1])),
         sqrt_char2(field, field.div(grid[2][0], grid[0][2])))
    out = RingMatrix.zeros(field, 3, 3)
    for i in range(3):
        for j in range(3):
            out[i, j] = field.mul(field.div(grid[i][j], g[i]), g[j])
    for i in range(3):
        for j in range(3):
            if out[i, j] != out[j, i]:
                raise RuntimeError("gauge failed to symmetrize the brick")
    return g, out


def symmetric_g_vectors(ring, a):
    """Printed distinguished vectors of the three thick spaces, in the
    slot order of the resolved line ordering."""
    mul = ring.mul
    sq = lambda x: mul(x, x)
    a12, a13, a23 = a[0][1], a[0][2], a[1][2]
    a11 = a[0][0]
    g1 = [ring.zero, ring.zero, ring.zero, mul(mul(a12, a13), sq(a23))]
    g23 = [ring.zero, mul(a13, sq(a23)), ring.zero, mul(mul(a11, a13), sq(a23))]
    rows = [_apply_ordering([row], axis)[0]
            for axis, row in enumerate((g1, g23, list(g23)))]
    return rows


def _exact_div(ring, x, denom):
    """Exact division by an element known to divide x (a monomial in the
    polynomial case, a base-scalar in the pair-algebra case)."""
    if isinstance(ring, SymPairRing):
        if denom[1] != ring.base.zero:
            raise InputError("pair-algebra division needs a scalar denominator")
        return (_exact_div(ring.base, x[0], denom[0]),
                _exact_div(ring.base, x[1], denom[0]))
    if isinstance(x, MultiPoly):
        q = x.monomial_quotient(denom)
        if q is None:
            raise RuntimeError("quotient is not polynomial")
        return q
    return ring.mul(x, ring.inv(denom))


def defining_g_vectors(ring, a, blk, bp):
    """All three distinguished vectors: the printed first one and the
    second and third from their defining quotients."""
    g1 = symmetric_g_vectors(ring, a)[0]
    sub = lambda i, j: blk.submatrix(bp.block_range(i), bp.block_range(j))
    out = [g1]
    for j, aij in ((1, a[0][1]), (2, a[0][2])):
        image = row_vec_mul(g1, sub(0, j))
        denom = ring.mul(aij, aij)
        out.append([_exact_div(ring, x, denom) for x in image])
    return out


def recompute_g_vectors(ring, a, blk, bp):
    """g2 and g3 from their defining quotients g1 R12 / a12^2 and
    g1 R13 / a13^2."""
    return defining_g_vectors(ring, a, blk, bp)[1:]


def g3_typo_report() -> dict:
    """The printed third distinguished vector coincides with the second;
    recompute both from their definitions and report the true value."""
    ring, a = symmetric_brick_ring()
    blk, prof = assemble_cube(ring, a, 2)
    printed = symmetric_g_vectors(ring, a)
    g2, g3 = recompute_g_vectors(ring, a, blk, prof.block_profile)
    return {
        "printed_identical": printed[1] == printed[2],
        "g2_matches_printed": g2 == printed[1],
        "g3_matches_printed": g3 == printed[2],
        "typo_confirmed": g2 == printed[1] and g3 != printed[2],
        "g3_recomputed": [repr(x) for x in g3],
    }


class SymPairRing:
    """Commutative algebra spanned by 1 and an involution t (t^2 = 1)
    over a base ring; elements are pairs (u, v) meaning u + v t."""

    is_field = False

    def __init__(self, base):
        self.base = base
        self.char = base.char
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.t = (base.zero, base.one)

    def embed(self, x):
        return (x, self.base.zero)

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def sub(self, x, y):
        return (self.base.sub(x[0], y[0]), self.base.sub(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        b = self.base
        return (b.add(b.mul(x[0], y[0]), b.mul(x[1], y[1])),
                b.add(b.mul(x[0], y[1]), b.mul(x[1], y[0])))

    def __eq__(self, other):
        return isinstance(other, SymPairRing) and self.base == other.base

    def __hash__(self):
        return hash(("SymPairRing", self.base))

    def __repr__(self):
        return f"SymPairRing({self.base!r})"


def _sigma_symmetric(ring, a) -> RingMatrix:
    """Target for the symmetric basis order (e1, e2, g, f) per space:
    every slot carries the squared entry, and the g slot additionally
    feeds f when crossing between spaces 2 and 3."""
    out = RingMatrix.zeros(ring, 12, 12)
    for i in range(3):
        for j in range(3):
            sq = ring.mul(a[i][j], a[i][j])
            for s in range(4):
                out[4 * i + s, 4 * j + s] = sq
            if {i, j} == {1, 2}:
                out[4 * i + 2, 4 * j + 3] = sq
    return out


def verify_symmetric_decomposition(level: str = "simple", mode: str = "symbolic",
                                   field: FiniteField | None = None,
                                   entries=None, seed: int = 0) -> DecompositionReport:
    """Conjugation identity for a symmetric brick: two squared simple
    summands plus one 6x6 double summand; at the double-brick level,
    four simple plus two double."""
    if level == "simple":
        if mode == "symbolic":
            ring, a = symmetric_brick_ring()
        else:
            if field is None:
                field = FiniteField(2, 16)
            ring = field
            if entries is None:
                rng = random.Random(seed)
                while True:
                    vals = {v: field.sample_nonzero(rng) for v in SYM_VARS}
                    a = [[vals[f"a{min(i, j)}{max(i, j)}"] for j in (1, 2, 3)]
                         for i in (1, 2, 3)]
                    if field.mul(field.mul(a[0][1], a[0][2]), a[1][2]) != field.zero:
                        break
            else:
                a = [list(row) for row in entries]
                for i in range(3):
                    for j in range(3):
                        if a[i][j] != a[j][i]:
                            raise InputError("brick is not symmetric")
                if (a[0][1] == field.zero or a[0][2] == field.zero
                        or a[1][2] == field.zero):
                    return DecompositionReport(
                        [("SimpleSymmetric", 2), ("DoubleBrick", 1)], 2,
                        Verdict(True, details={"reason": "degenerate"}),
                        degenerate=True,
                        details={"reason": "an off-diagonal entry vanishes"})
        summands = [("SimpleSymmetric", 2), ("DoubleBrick", 1)]
    elif level == "double":
        base = PolyRing(SYM_VARS, 2) if mode == "symbolic" else (
            field if field is not None else FiniteField(2, 16))
        if mode != "symbolic" and entries is None:
            rng = random.Random(seed)
            vals = {v: base.sample_nonzero(rng) for v in SYM_VARS}
            sym_of = lambda i, j: vals[f"a{min(i, j)}{max(i, j)}"]
        elif mode != "symbolic":
            sym_of = lambda i, j: entries[i - 1][j - 1]
        else:
            sym_of = lambda i, j: base.gen(f"a{min(i, j)}{max(i, j)}")
        ring = SymPairRing(base)
        a = [[ring.embed(sym_of(i, j)) for j in (1, 2, 3)] for i in (1, 2, 3)]
        a[1][2] = (base.zero, sym_of(2, 3))
        a[2][1] = a[1][2]
        summands = [("SimpleSymmetric", 4), ("DoubleBrick", 2)]
    else:
        raise InputError(f"unknown level {level!r}")

    blk, prof = assemble_cube(ring, a, 2)
    bp = prof.block_profile
    t1, t2, t3 = thick_basis_rows(ring, a)
    # the second and third distinguished vectors come from their defining
    # quotients; the printed third one carries a typo (see g3_typo_report)
    gs = defining_g_vectors(ring, a, blk, bp)
    per_space = []
    for axis, t in enumerate((t1, t2, t3)):
        rows = _apply_ordering([t[1], t[2]], axis) + [gs[axis]] \
            + _apply_ordering([t[0]], axis)
        per_space.append(rows)
    p_full = _stack_basis(ring, per_space)
    sigma = _sigma_symmetric(ring, a)
    lhs = p_full @ blk
    rhs = sigma @ p_full
    if lhs != rhs:
        bad = next((i, j) for i in range(12) for j in range(12)
                   if lhs[i, j] != rhs[i, j])
        return DecompositionReport(summands, 2, Verdict(False, witness={
            "entry": list(bad), "level": level, "mode": mode}))
    return DecompositionReport(summands, 2,
                               Verdict(True, details={"mode": mode, "level": level}),
                               details={"level": level})


# ----------------------------------------------------------------------
# Evolution censuses
# ----------------------------------------------------------------------

@dataclass
class EvolutionCensus:
    case: str
    n: int
    counts: tuple[int, ...]
    q_matrix: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"case": self.case, "n": self.n, "counts": list(self.counts),
                "q_matrix": [list(r) for r in self.q_matrix]}


_EVOLUTION_CASES = {
    "2d": (((2,),), (1,)),
    "3d-generic": (((3, 1), (1, 3)), (1, 0)),
    "3d-symmetric": (((2, 1), (4, 2)), (1, 0)),
}


def _closed_form(case: str, n: int) -> tuple[int, ...]:
    if case == "2d":
        return (2 ** n,)
    if case == "3d-generic":
        if n == 0:
            return (1, 0)
        return (2 ** (2 * n - 1) + 2 ** (n - 1), 2 ** (2 * n - 1) - 2 ** (n - 1))
    if case == "3d-symmetric":
        if n == 0:
            return (1, 0)
        return (2 ** (2 * n - 1), 2 ** (2 * n - 2))
    raise InputError(f"unknown evolution case {case!r}")


def evolution_census_closed_form(case: str, n: int) -> EvolutionCensus:
    """Summand counts after n block-making steps: the transfer-matrix
    recurrence and the closed forms, computed independently and asserted
    equal."""
    if n < 0:
        raise InputError("step count must be nonnegative")
    if case not in _EVOLUTION_CASES:
        raise InputError(f"unknown evolution case {case!r}")
    q, init = _EVOLUTION_CASES[case]
    vec = list(init)
    for _ in range(n):
        vec = [sum(vec[i] * q[i][j] for i in range(len(vec)))
               for j in range(len(vec))]
    closed = _closed_form(case, n)
    if tuple(vec) != closed:
        raise RuntimeError(
            f"recurrence {tuple(vec)} disagrees with closed form {closed}")
    return EvolutionCensus(case, n, closed, q)


def _det_at_shift(field, arr, x):
    """det(matrix - x) for a coefficient-array matrix, via the generic
    field elimination."""
    m = fieldmat.from_array(field, arr)
    shifted = m - RingMatrix.scalar(field, m.rows, x)
    return mat_det(shifted)


def detect_evolution_summands(case: str, n: int, seed: int = 0,
                              m: int = 16, field: FiniteField | None = None,
                              entries=None) -> Verdict:
    """Confirm the predicted direct sum after n evolution steps at a
    random specialization: det(R - x) must agree with the product of the
    predicted summand determinants at more points than the polynomial
    degree, which makes the comparison exact."""
    if field is None:
        field = FiniteField(2, m)
    rng = random.Random(seed)
    census = evolution_census_closed_form(case, n)
    e = 2 ** n
    if case == "2d":
        if entries is None:
            a, d = field.sample(rng), field.sample(rng)
            b, c = field.sample_nonzero(rng), field.sample_nonzero(rng)
        else:
            (a, b), (c, d) = entries
        brick = BrickSpec(2, (1, 1), RingMatrix.from_rows(field, [[a, b], [c, d]]))
        fr = field.pow
        tilde = [[fr(a, e), fr(b, e)], [fr(c, e), fr(d, e)]]
        pieces = [(RingMatrix.from_rows(field, tilde), census.counts[0])]
    elif case == "3d-generic":
        if entries is None:
            while True:
                a = [[field.sample_nonzero(rng) for _ in range(3)]
                     for _ in range(3)]
                if mixed_product_difference(field, a) != field.zero:
                    break
        else:
            a = [list(row) for row in entries]
        tilde = [[field.pow(a[i][j], e) for j in range(3)] for i in range(3)]
        tmat = RingMatrix.from_rows(field, tilde)
        pieces = [(tmat, census.counts[0]), (tmat.transpose(), census.counts[1])]
        brick = BrickSpec(3, (1, 1, 1), grid_matrix(field, a))
    elif case == "3d-symmetric":
        if entries is None:
            vals = {v: field.sample_nonzero(rng) for v in SYM_VARS}
            a = [[vals[f"a{min(i, j)}{max(i, j)}"] for j in (1, 2, 3)]
                 for i in (1, 2, 3)]
        else:
            a = [list(row) for row in entries]
        tilde = [[field.pow(a[i][j], e) for j in range(3)] for i in range(3)]
        simple = RingMatrix.from_rows(field, tilde)
        dbl = RingMatrix.zeros(field, 6, 6)
        for i in range(3):
            for j in range(3):
                dbl[2 * i, 2 * j] = tilde[i][j]
                dbl[2 * i + 1, 2 * j + 1] = tilde[i][j]
                if {i, j} == {1, 2}:
                    dbl[2 * i, 2 * j + 1] = tilde[i][j]
        pieces = [(simple, census.counts[0]), (dbl, census.counts[1])]
        brick = BrickSpec(3, (1, 1, 1), grid_matrix(field, a))
    else:
        raise InputError(f"unknown evolution case {case!r}")
    from .lattice import evolve
    steps = evolve(brick, n, 2)
    blk = steps[-1][0]
    total_dim = sum(p.rows * mult for p, mult in pieces)
    if blk.rows != total_dim:
        return Verdict(False, witness={"failed": "dimension",
                                       "block": blk.rows, "predicted": total_dim})
    arr = fieldmat.to_array(field, blk)
    degree = blk.rows
    points = rng.sample(range(field.q), degree + 1)
    for x in points:
        lhs = _det_at_shift(field, arr, x)
        rhs = field.one
        for piece, mult in pieces:
            dx = mat_det(piece - RingMatrix.scalar(field, piece.rows, x))
            rhs = field.mul(rhs, field.pow(dx, mult))
        if lhs != rhs:
            return Verdict(False, witness={"failed": "determinant", "x": x})
    return Verdict(True, details={
        "case": case, "n": n, "points": degree + 1,
        "exact": True, "counts": list(census.counts)})
