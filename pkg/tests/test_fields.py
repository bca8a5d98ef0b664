import random

import pytest

from cubeblocks.errors import InputError
from cubeblocks.fields import FiniteField, build_extension_field, find_irreducible, sqrt_char2


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------

def test_prime_field_tables():
    f = FiniteField(5)
    assert f.q == 5
    assert f.add(3, 4) == 2
    assert f.mul(3, 4) == 2
    assert f.inv(3) == 2
    assert f.neg(2) == 3


def test_modulus_is_deterministic():
    assert FiniteField(2, 8).modulus == FiniteField(2, 8).modulus
    assert FiniteField(3, 4).modulus == FiniteField(3, 4).modulus


def test_find_irreducible_small():
    # x^2 + x + 1 is the only monic irreducible quadratic over GF(2)
    assert find_irreducible(2, 2) == (1, 1, 1)


def test_bad_characteristic_rejected():
    with pytest.raises(InputError):
        FiniteField(4)


# ----------------------------------------------------------------------
# field axioms on random samples
# ----------------------------------------------------------------------

@pytest.mark.parametrize("p,m", [(2, 8), (3, 4), (7, 3), (2, 16)])
def test_axioms(p, m):
    f = FiniteField(p, m)
    rng = random.Random(17)
    for _ in range(60):
        x, y, z = (f.sample(rng) for _ in range(3))
        assert f.add(x, y) == f.add(y, x)
        assert f.mul(x, y) == f.mul(y, x)
        assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
        assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
        assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
        assert f.add(x, f.neg(x)) == f.zero
        if x != f.zero:
            assert f.mul(x, f.inv(x)) == f.one


@pytest.mark.parametrize("p,m", [(2, 8), (3, 4), (5, 2)])
def test_frobenius_is_additive(p, m):
    f = FiniteField(p, m)
    rng = random.Random(3)
    for _ in range(40):
        x, y = f.sample(rng), f.sample(rng)
        assert f.pow(f.add(x, y), p) == f.add(f.pow(x, p), f.pow(y, p))


def test_multiplicative_order():
    f = FiniteField(2, 8)
    rng = random.Random(5)
    for _ in range(20):
        x = f.sample_nonzero(rng)
        assert f.pow(x, f.q - 1) == f.one


def test_sqrt_char2():
    f = FiniteField(2, 16)
    rng = random.Random(9)
    for _ in range(40):
        x = f.sample(rng)
        r = sqrt_char2(f, x)
        assert f.mul(r, r) == x


def test_json_roundtrip():
    f = FiniteField(3, 4)
    g = FiniteField.from_json(f.to_json())
    assert g.p == 3 and g.m == 4 and g.modulus == f.modulus


def test_build_extension_field():
    f = build_extension_field(2, 5)
    assert f.q == 32
