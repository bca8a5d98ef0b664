"""Exact arithmetic in prime fields GF(p) and extensions GF(p^m).

An element of GF(p^m) is a Python int in [0, p^m): its base-p digits are
the coefficients of the polynomial-basis representation, constant term in
the lowest digit.  For m = 1 this is the usual residue representation.

The reducing modulus for GF(p^m) is chosen deterministically: the monic
irreducible of degree m whose coefficient vector (constant term first)
encodes to the smallest integer in base p.  The same (p, m) therefore
always yields the same field.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .errors import InputError, UnsupportedRingError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ----------------------------------------------------------------------
# Polynomials over F_p as little-endian coefficient lists
# ----------------------------------------------------------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    # f monic
    a = a[:]
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1] % p
        if c:
            shift = len(a) - 1 - df
            for i in range(df + 1):
                a[shift + i] = (a[shift + i] - c * f[i]) % p
        a.pop()
    return _trim(a)


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    acc = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, acc, p), f, p)
        acc = _pmod(_pmul(acc, acc, p), f, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        # make b monic for _pmod
        lead = b[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            b = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, b, p)
    if a:
        lead = a[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            a = [(c * inv) % p for c in a]
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    x = [0, 1]
    xq = x
    for _ in range(m):
        xq = _ppowmod(xq, p, f, p)
    if _psub(xq, x, p):
        return False
    for r in _prime_factors(m):
        xe = x
        for _ in range(m // r):
            xe = _ppowmod(xe, p, f, p)
        if _pgcd(f, _psub(xe, x, p), p) != [1]:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree m over F_p.

    Candidates are scanned in increasing order of the base-p integer
    encoding of their lower coefficients (constant term in the lowest
    digit); the first irreducible wins.
    """
    if m == 1:
        return (0, 1)  # modulus x: plain residues
    for code in range(p ** m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible of degree {m} over F_{p}")  # unreachable


# ----------------------------------------------------------------------
# Field
# ----------------------------------------------------------------------

class FiniteField:
    """GF(p^m) with int-encoded elements; also serves as a ring object.

    Ring protocol attributes used throughout the package: ``zero``,
    ``one``, ``char``, ``is_field``, and methods ``add``, ``sub``,
    ``neg``, ``mul``, ``inv``.
    """

    is_field = True

    def __init__(self, p: int, m: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if m < 1:
            raise InputError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p ** m
        self.char = p
        if modulus is None:
            modulus = find_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InputError("modulus must be monic of degree m")
        if m > 1 and not _is_irreducible(list(modulus), p):
            raise InputError("modulus is not irreducible over F_p")
        self.modulus = modulus
        self.zero = 0
        self.one = 1 % self.q
        # reduction rows: x^t mod modulus for t = m .. 2m-2, as coeff tuples
        red = []
        cur = list(modulus[:-1])
        cur = [(-c) % p for c in cur]  # x^m = -lower coeffs
        for _ in range(m - 1):
            red.append(tuple(cur))
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(m):
                    nxt[i] = (nxt[i] + top * red[0][i]) % p
            cur = [c % p for c in nxt]
        self._red = red
        self._red_np = None

    # -- representation ------------------------------------------------

    def coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return out

    def encode(self, coeffs) -> int:
        if len(coeffs) > self.m and any(c % self.p for c in coeffs[self.m:]):
            raise InputError("coefficient vector longer than extension degree")
        x = 0
        for c in reversed(list(coeffs[:self.m])):
            x = x * self.p + (int(c) % self.p)
        return x

    def from_int(self, k: int) -> int:
        """Embed an integer via the prime subfield."""
        return k % self.p

    @property
    def reduction_matrix(self):
        """(m-1, m) int64 array: row t-m holds x^t mod modulus, t >= m."""
        if self._red_np is None:
            import numpy as np
            self._red_np = np.array(self._red, dtype=np.int64).reshape(self.m - 1, self.m)
        return self._red_np

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        out = 0
        shift = 1
        for _ in range(self.m):
            out += ((a + b) % self.p) * shift
            a //= self.p
            b //= self.p
            shift *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        out = 0
        shift = 1
        for _ in range(self.m):
            out += ((-a) % self.p) * shift
            a //= self.p
            shift *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if self.p == 2:
            return self._mul2(a, b)
        ca = self.coeffs(a)
        cb = self.coeffs(b)
        m = self.m
        conv = [0] * (2 * m - 1)
        for i, ai in enumerate(ca):
            if ai:
                for j, bj in enumerate(cb):
                    conv[i + j] += ai * bj
        res = conv[:m]
        for t in range(m, 2 * m - 1):
            c = conv[t]
            if c:
                row = self._red[t - m]
                for i in range(m):
                    res[i] += c * row[i]
        x = 0
        for c in reversed(res):
            x = x * self.p + c % self.p
        return x

    def _mul2(self, a: int, b: int) -> int:
        # carry-less multiply then reduce by the modulus bit pattern
        res = 0
        aa = a
        while b:
            if b & 1:
                res ^= aa
            aa <<= 1
            b >>= 1
        m = self.m
        modbits = 0
        for i, c in enumerate(self.modulus):
            if c:
                modbits |= 1 << i
        for t in range(res.bit_length() - 1, m - 1, -1):
            if res >> t & 1:
                res ^= modbits << (t - m)
        return res

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        acc = a
        while e:
            if e & 1:
                result = self.mul(result, acc)
            acc = self.mul(acc, acc)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- misc ----------------------------------------------------------

    def elements(self):
        return range(self.q)

    def sample(self, rng) -> int:
        return rng.randrange(self.q)

    def sample_nonzero(self, rng) -> int:
        return rng.randrange(1, self.q)

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj) -> "FiniteField":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["p"]), int(obj["m"]), tuple(obj["modulus"]))


def build_extension_field(p: int, m: int) -> FiniteField:
    """GF(p^m) with the deterministic lowest-encoding irreducible modulus."""
    return FiniteField(p, m)


def sqrt_char2(field: FiniteField, x: int) -> int:
    """The unique square root in characteristic 2: x^(2^(m-1))."""
    if field.p != 2:
        raise UnsupportedRingError("square roots via Frobenius need characteristic 2")
    return field.pow(x, 1 << (field.m - 1))
