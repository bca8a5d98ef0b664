"""Sparse multivariate polynomials over F_p or the integers.

A polynomial is a map from exponent vectors to nonzero coefficients.
The coefficient ring is tagged by ``char``: 0 means integer coefficients
(Python ints, so no overflow), a prime p means F_p.  Terms are kept in
graded-lexicographic order for stable iteration and serialization.
"""

from __future__ import annotations

from .errors import InputError
from .fields import FiniteField


def _gradedlex_key(expts: tuple[int, ...]):
    return (sum(expts), expts)


class MultiPoly:
    __slots__ = ("vars", "char", "terms")

    def __init__(self, variables: tuple[str, ...], char: int, terms: dict):
        self.vars = tuple(variables)
        self.char = char
        cleaned = {}
        for e, c in terms.items():
            if char:
                c %= char
            if c:
                cleaned[tuple(e)] = c
        # canonical order: graded lex, highest first
        self.terms = dict(sorted(cleaned.items(),
                                 key=lambda kv: _gradedlex_key(kv[0]),
                                 reverse=True))

    # -- constructors --------------------------------------------------

    @classmethod
    def const(cls, variables, char, c):
        return cls(variables, char, {(0,) * len(variables): c})

    @classmethod
    def gen(cls, variables, char, name):
        variables = tuple(variables)
        if name not in variables:
            raise InputError(f"unknown variable {name!r}")
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, char, {tuple(e): 1})

    # -- ring structure ------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars or self.char != other.char:
            raise InputError("polynomials belong to different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.vars, self.char, out)

    def __neg__(self):
        return MultiPoly(self.vars, self.char, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.vars, self.char, out)

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        result = MultiPoly.const(self.vars, self.char, 1)
        acc = self
        while n:
            if n & 1:
                result = result * acc
            acc = acc * acc
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.vars, self.char, self.terms) == (other.vars, other.char, other.terms)

    def __hash__(self):
        return hash((self.vars, self.char, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def num_terms(self) -> int:
        return len(self.terms)

    def monomial_quotient(self, other: "MultiPoly") -> "MultiPoly | None":
        """Exact quotient self / other when other is a single term, else None."""
        self._check(other)
        if len(other.terms) != 1:
            return None
        (de, dc), = other.terms.items()
        out = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in q):
                return None
            if self.char:
                c = c * pow(dc, self.char - 2, self.char) % self.char
            else:
                if c % dc:
                    return None
                c = c // dc
            out[q] = c
        return MultiPoly(self.vars, self.char, out)

    def extend_vars(self, variables: tuple[str, ...]) -> "MultiPoly":
        """Re-embed into a ring with a superset of the variables."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            if v not in variables:
                raise InputError(f"variable {v!r} missing from target ring")
            idx.append(variables.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        return MultiPoly(variables, self.char, out)

    # -- evaluation ----------------------------------------------------

    def specialize(self, assignment: dict, field: FiniteField) -> int:
        """Value at a point, as a field element.

        Integer coefficients reduce mod the characteristic; F_p
        coefficients require a matching characteristic.
        """
        if self.char and self.char != field.p:
            raise InputError(
                f"cannot specialize char-{self.char} coefficients into {field!r}")
        for v in self.vars:
            if v not in assignment:
                raise InputError(f"assignment missing variable {v!r}")
        point = [assignment[v] for v in self.vars]
        # cache powers per variable up to the needed exponent
        maxdeg = [0] * len(self.vars)
        for e in self.terms:
            for i, x in enumerate(e):
                if x > maxdeg[i]:
                    maxdeg[i] = x
        powers = []
        for i, x in enumerate(point):
            row = [field.one]
            for _ in range(maxdeg[i]):
                row.append(field.mul(row[-1], x))
            powers.append(row)
        acc = field.zero
        for e, c in self.terms.items():
            term = field.from_int(c)
            for i, x in enumerate(e):
                if x:
                    term = field.mul(term, powers[i][x])
            acc = field.add(acc, term)
        return acc

    # -- serialization / display ---------------------------------------

    def to_terms(self) -> list:
        return [[list(e), c] for e, c in self.terms.items()]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"{v}^{x}" if x > 1 else v
                            for v, x in zip(self.vars, e) if x)
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)


class PolyRing:
    """Ring object over MultiPoly elements (char 0 = integers)."""

    is_field = False

    def __init__(self, variables, char: int = 0):
        self.vars = tuple(variables)
        self.char = char
        self.zero = MultiPoly(self.vars, char, {})
        self.one = MultiPoly.const(self.vars, char, 1)

    def gen(self, name: str) -> MultiPoly:
        return MultiPoly.gen(self.vars, self.char, name)

    def gens(self) -> list[MultiPoly]:
        return [self.gen(v) for v in self.vars]

    def const(self, c) -> MultiPoly:
        return MultiPoly.const(self.vars, self.char, c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sample(self, rng, max_terms: int = 5, max_deg: int = 3) -> MultiPoly:
        span = self.char if self.char else 7
        terms = {}
        for _ in range(rng.randrange(max_terms + 1)):
            e = tuple(rng.randrange(max_deg + 1) for _ in self.vars)
            terms[e] = terms.get(e, 0) + rng.randrange(1, span)
        return MultiPoly(self.vars, self.char, terms)

    def __eq__(self, other):
        return (isinstance(other, PolyRing)
                and (self.vars, self.char) == (other.vars, other.char))

    def __hash__(self):
        return hash((self.vars, self.char))

    def __repr__(self):
        base = "Z" if self.char == 0 else f"F_{self.char}"
        return f"{base}[{', '.join(self.vars)}]"
