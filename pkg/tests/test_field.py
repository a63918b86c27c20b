import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from volrig.errors import ArgumentError
from volrig.field import DEFAULT_PRIME, GF, QQ, ModP, PrimeField, get_field, to_str


def test_default_prime_is_prime_and_large():
    assert sympy.isprime(DEFAULT_PRIME)
    assert DEFAULT_PRIME > 2**61


@given(st.integers(), st.integers(), st.integers(min_value=1, max_value=10**9))
def test_modp_matches_integer_arithmetic(a, b, c):
    p = DEFAULT_PRIME
    x, y = ModP(a, p), ModP(b, p)
    assert (x + y).v == (a + b) % p
    assert (x * y).v == (a * b) % p
    assert (x - y).v == (a - b) % p
    assert (ModP(a, p) / c) * c == ModP(a, p)


@given(st.fractions(max_denominator=10**6))
def test_fraction_reduction_is_a_homomorphism(q):
    p = DEFAULT_PRIME
    x = GF(q)
    assert x * q.denominator == ModP(q.numerator, p)


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        GF(1) / GF(0)


def test_get_field():
    assert get_field("rational") is QQ
    assert get_field("prime") is GF
    assert get_field(101) == PrimeField(101)
    with pytest.raises(ArgumentError):
        get_field("reals")


def test_random_is_seeded():
    a = [GF.random(random.Random(3)) for _ in range(2)]
    b = [GF.random(random.Random(3)) for _ in range(2)]
    assert a == b
    assert abs(QQ.random(random.Random(1))) <= 10**6


def test_to_str():
    assert to_str(Fraction(-3, 4)) == "-3/4"
    assert to_str(5) == "5"
    assert to_str(ModP(-1, 7)) == "6"
