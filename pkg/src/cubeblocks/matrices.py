"""Dense exact matrices over a commutative ring, right-action convention.

All vectors in this package are rows and matrices act on them from the
right: applying ``a`` then ``b`` to a row ``x`` is ``x @ (a @ b)``.
Field-only routines (rref, kernel, inverse) require ``ring.is_field``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, SingularMatrixError, UnsupportedRingError


@dataclass(frozen=True)
class BlockProfile:
    """Sizes of the diagonal blocks partitioning a square matrix."""

    sizes: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def offsets(self) -> tuple[int, ...]:
        out = []
        acc = 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    def block_range(self, i: int) -> range:
        off = self.offsets[i]
        return range(off, off + self.sizes[i])


class RingMatrix:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring, rows: int, cols: int, data: list):
        if len(data) != rows * cols:
            raise InputError("entry count does not match shape")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors --------------------------------------------------

    @classmethod
    def from_rows(cls, ring, rows: list) -> "RingMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise InputError("ragged rows")
            flat.extend(row)
        return cls(ring, r, c, flat)

    @classmethod
    def identity(cls, ring, n: int) -> "RingMatrix":
        data = [ring.zero] * (n * n)
        for i in range(n):
            data[i * n + i] = ring.one
        return cls(ring, n, n, data)

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "RingMatrix":
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    @classmethod
    def scalar(cls, ring, n: int, c) -> "RingMatrix":
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m.data[i * n + i] = c
        return m

    @classmethod
    def diagonal(cls, ring, entries) -> "RingMatrix":
        entries = list(entries)
        m = cls.zeros(ring, len(entries), len(entries))
        for i, c in enumerate(entries):
            m.data[i * len(entries) + i] = c
        return m

    # -- access --------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self.data[i * self.cols + j]

    def __setitem__(self, key, value):
        i, j = key
        self.data[i * self.cols + j] = value

    def row(self, i: int) -> list:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def copy(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows, self.cols, list(self.data))

    def submatrix(self, row_idx, col_idx) -> "RingMatrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        data = [self.data[i * self.cols + j] for i in row_idx for j in col_idx]
        return RingMatrix(self.ring, len(row_idx), len(col_idx), data)

    def set_block(self, r0: int, c0: int, block: "RingMatrix") -> None:
        for i in range(block.rows):
            base = (r0 + i) * self.cols + c0
            self.data[base:base + block.cols] = block.row(i)

    def transpose(self) -> "RingMatrix":
        data = [self.data[i * self.cols + j]
                for j in range(self.cols) for i in range(self.rows)]
        return RingMatrix(self.ring, self.cols, self.rows, data)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.ring == other.ring and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.data)))

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols} over {self.ring!r})"

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        self._same_shape(other)
        add = self.ring.add
        return RingMatrix(self.ring, self.rows, self.cols,
                          [add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._same_shape(other)
        sub = self.ring.sub
        return RingMatrix(self.ring, self.rows, self.cols,
                          [sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self):
        neg = self.ring.neg
        return RingMatrix(self.ring, self.rows, self.cols,
                          [neg(a) for a in self.data])

    def scalar_mul(self, c) -> "RingMatrix":
        mul = self.ring.mul
        return RingMatrix(self.ring, self.rows, self.cols,
                          [mul(c, a) for a in self.data])

    def __matmul__(self, other):
        return mat_mul(self, other)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols) or self.ring != other.ring:
            raise InputError("shape or ring mismatch")

    def is_scalar(self) -> bool:
        """True when the matrix is c * identity for some ring element c."""
        if self.rows != self.cols:
            return False
        c = self[0, 0]
        zero = self.ring.zero
        for i in range(self.rows):
            for j in range(self.cols):
                want = c if i == j else zero
                if self[i, j] != want:
                    return False
        return True


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.cols != b.rows or a.ring != b.ring:
        raise InputError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    ring = a.ring
    add = ring.add
    mul = ring.mul
    zero = ring.zero
    n, k, m = a.rows, a.cols, b.cols
    out = [zero] * (n * m)
    brows = b.to_rows()
    for i in range(n):
        arow = a.row(i)
        acc = [zero] * m
        for t in range(k):
            av = arow[t]
            if av == zero:
                continue
            brow = brows[t]
            for j in range(m):
                bv = brow[j]
                if bv != zero:
                    acc[j] = add(acc[j], mul(av, bv))
        out[i * m:(i + 1) * m] = acc
    return RingMatrix(ring, n, m, out)


def row_vec_mul(x: list, a: RingMatrix) -> list:
    """Row vector times matrix."""
    if len(x) != a.rows:
        raise InputError("row vector length mismatch")
    ring = a.ring
    acc = [ring.zero] * a.cols
    for t, xv in enumerate(x):
        if xv == ring.zero:
            continue
        arow = a.row(t)
        for j in range(a.cols):
            acc[j] = ring.add(acc[j], ring.mul(xv, arow[j]))
    return acc


def kron(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Kronecker product; row/col index is (outer, inner) lexicographic."""
    if a.ring != b.ring:
        raise InputError("ring mismatch")
    ring = a.ring
    out = RingMatrix.zeros(ring, a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            c = a[i, j]
            if c == ring.zero:
                continue
            out.set_block(i * b.rows, j * b.cols, b.scalar_mul(c))
    return out


def direct_sum(ms: list) -> RingMatrix:
    if not ms:
        raise InputError("direct sum of an empty list")
    ring = ms[0].ring
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = RingMatrix.zeros(ring, rows, cols)
    r = c = 0
    for m in ms:
        if m.ring != ring:
            raise InputError("ring mismatch in direct sum")
        out.set_block(r, c, m)
        r += m.rows
        c += m.cols
    return out


# ----------------------------------------------------------------------
# Elimination (fields)
# ----------------------------------------------------------------------

def rref(m: RingMatrix) -> tuple[RingMatrix, list[int]]:
    """Reduced row echelon form over a field; deterministic pivoting
    (first nonzero entry left-to-right, rows top-to-bottom)."""
    ring = m.ring
    if not getattr(ring, "is_field", False):
        raise UnsupportedRingError("rref needs a field")
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c] != ring.zero:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ring.inv(a[r][c])
        if inv != ring.one:
            a[r] = [ring.mul(inv, v) for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != ring.zero:
                f = a[i][c]
                a[i] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RingMatrix.from_rows(ring, a), pivots


def rank(m: RingMatrix) -> int:
    return len(rref(m)[1])


def row_kernel(m: RingMatrix) -> list[list]:
    """Basis of {x : x @ m = 0}; the basis matrix is in RREF."""
    ring = m.ring
    if not getattr(ring, "is_field", False):
        raise UnsupportedRingError("row_kernel needs a field")
    # right nullspace of m^T
    red, pivots = rref(m.transpose())
    n = m.rows
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    basis = []
    for f in free:
        x = [ring.zero] * n
        x[f] = ring.one
        for r_i, pc in enumerate(pivots):
            # pivot coordinate determined by free coordinates
            x[pc] = ring.neg(red[r_i, f])
        basis.append(x)
    if not basis:
        return []
    normalized, _ = rref(RingMatrix.from_rows(ring, basis))
    return normalized.to_rows()


def mat_inverse(m: RingMatrix) -> RingMatrix:
    if m.rows != m.cols:
        raise InputError("inverse of a non-square matrix")
    ring = m.ring
    if not getattr(ring, "is_field", False):
        raise UnsupportedRingError("inverse needs a field")
    n = m.rows
    aug = RingMatrix.zeros(ring, n, 2 * n)
    aug.set_block(0, 0, m)
    aug.set_block(0, n, RingMatrix.identity(ring, n))
    red, pivots = rref(aug)
    got = len([p for p in pivots if p < n])
    if got < n:
        raise SingularMatrixError(f"singular matrix (rank {got})", rank=got)
    return red.submatrix(range(n), range(n, 2 * n))


def mat_det(m: RingMatrix):
    """Exact determinant: elimination over fields, cofactor expansion
    over other commutative rings (small dimensions only)."""
    if m.rows != m.cols:
        raise InputError("determinant of a non-square matrix")
    ring = m.ring
    n = m.rows
    if getattr(ring, "is_field", False):
        a = m.to_rows()
        det = ring.one
        for c in range(n):
            piv = None
            for i in range(c, n):
                if a[i][c] != ring.zero:
                    piv = i
                    break
            if piv is None:
                return ring.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = ring.neg(det)
            det = ring.mul(det, a[c][c])
            inv = ring.inv(a[c][c])
            for i in range(c + 1, n):
                if a[i][c] != ring.zero:
                    f = ring.mul(a[i][c], inv)
                    a[i] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(a[i], a[c])]
        return det
    if n > 6:
        raise UnsupportedRingError(
            "cofactor determinant limited to dimension 6 over non-field rings")
    return _det_cofactor(m, list(range(n)), list(range(n)))


def _det_cofactor(m: RingMatrix, rows: list[int], cols: list[int]):
    ring = m.ring
    if len(rows) == 1:
        return m[rows[0], cols[0]]
    acc = ring.zero
    r0 = rows[0]
    rest = rows[1:]
    for k, c in enumerate(cols):
        v = m[r0, c]
        if v == ring.zero:
            continue
        sub_cols = cols[:k] + cols[k + 1:]
        term = ring.mul(v, _det_cofactor(m, rest, sub_cols))
        acc = ring.add(acc, term) if k % 2 == 0 else ring.sub(acc, term)
    return acc


def charpoly(m: RingMatrix) -> list:
    """Characteristic polynomial det(x*1 - m) by the Berkowitz method
    (division-free, any commutative ring).  Returns coefficients
    [c_0, ..., c_n] with p(x) = sum c_i x^i, c_n = 1."""
    if m.rows != m.cols:
        raise InputError("charpoly of a non-square matrix")
    ring = m.ring
    n = m.rows
    if n == 0:
        return [ring.one]
    add, sub_, mul = ring.add, ring.sub, ring.mul
    # vector of charpoly coefficients, leading first
    poly = [ring.one, ring.neg(m[0, 0])]
    for k in range(1, n):
        # principal k+1 x k+1 leading submatrix pieces
        a_kk = m[k, k]
        row = [m[k, j] for j in range(k)]       # R: last row
        col = [m[i, k] for i in range(k)]       # C: last column
        top = m.submatrix(range(k), range(k))   # A: leading block
        # Toeplitz column: [1, -a_kk, -R C, -R A C, -R A^2 C, ...]
        tcol = [ring.one, ring.neg(a_kk)]
        vec = col
        for _ in range(k):
            acc = ring.zero
            for rv, vv in zip(row, vec):
                acc = add(acc, mul(rv, vv))
            tcol.append(ring.neg(acc))
            vec = [_dot(ring, top.row(i), vec) for i in range(k)]
        # multiply the lower-triangular Toeplitz matrix of tcol into poly
        new_poly = []
        for i in range(len(poly) + 1):
            acc = ring.zero
            for j in range(len(poly)):
                d = i - j
                if 0 <= d < len(tcol):
                    acc = add(acc, mul(tcol[d], poly[j]))
            new_poly.append(acc)
        poly = new_poly
    # poly is leading-first; return constant-first
    poly.reverse()
    return poly


def _dot(ring, xs, ys):
    acc = ring.zero
    for x, y in zip(xs, ys):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def gauge_conjugate(r: RingMatrix, profile: BlockProfile, gs: list[RingMatrix]) -> RingMatrix:
    """Conjugate by the block-diagonal matrix built from gs: G^-1 r G."""
    if profile is None:
        profile = BlockProfile(tuple(g.rows for g in gs))
    if tuple(g.rows for g in gs) != profile.sizes:
        raise InputError("gauge block sizes do not match the profile")
    if profile.total != r.rows or r.rows != r.cols:
        raise InputError("profile does not cover the matrix")
    g = direct_sum(gs)
    try:
        ginv = mat_inverse(g)
    except SingularMatrixError as exc:
        raise InputError(f"gauge factor is singular: {exc}") from exc
    return mat_mul(mat_mul(ginv, r), g)


class IntegerRing:
    """The ring of integers (arbitrary-precision, so never overflows)."""

    is_field = False
    char = 0
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")

    def __repr__(self):
        return "Z"
