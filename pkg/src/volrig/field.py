"""Exact scalar fields: the rationals and a large prime field.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
elements are :class:`ModP` instances, which interoperate with ``int`` and
``Fraction`` through the usual arithmetic operators so that the linear
algebra elsewhere can be written once for both fields.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import ArgumentError

# largest prime below 2**62
DEFAULT_PRIME = 2**62 - 57

# rational realisations draw integers from [-RATIONAL_BOUND, RATIONAL_BOUND]
RATIONAL_BOUND = 10**6


class ModP:
    """An element of Z/pZ."""

    __slots__ = ("v", "p")

    def __init__(self, v, p=DEFAULT_PRIME):
        if isinstance(v, ModP):
            if v.p != p:
                raise ArgumentError("mixing elements of different prime fields")
            v = v.v
        elif isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ArgumentError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, (int, Fraction)):
            return ModP(other, self.p).v
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in prime field")
            return ModP(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v})"


class RationalField:
    kind = "rational"
    prime = None

    def __call__(self, x) -> Fraction:
        if isinstance(x, ModP):
            raise ArgumentError("cannot lift a prime-field element to the rationals")
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-RATIONAL_BOUND, RATIONAL_BOUND))

    def sample_size(self) -> int:
        """Number of values :meth:`random` can return."""
        return 2 * RATIONAL_BOUND + 1

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 3:
            raise ArgumentError("prime must be odd")
        self.prime = p

    def __call__(self, x) -> ModP:
        if isinstance(x, str):
            x = Fraction(x)
        return ModP(x, self.prime)

    @property
    def zero(self):
        return ModP(0, self.prime)

    @property
    def one(self):
        return ModP(1, self.prime)

    def random(self, rng: random.Random) -> ModP:
        return ModP(rng.randrange(self.prime), self.prime)

    def sample_size(self) -> int:
        return self.prime

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.prime == self.prime

    def __hash__(self):
        return hash(("prime", self.prime))

    def __repr__(self):
        return f"PrimeField({self.prime})"


QQ = RationalField()
GF = PrimeField()


def get_field(spec=None):
    """Resolve ``"rational"``, ``"prime"``, a prime modulus or a field object."""
    if spec is None or spec == "rational":
        return QQ
    if spec == "prime":
        return GF
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    raise ArgumentError(f"unknown field {spec!r}")


def field_of(x):
    """The field a scalar lives in (ints and Fractions count as rational)."""
    if isinstance(x, ModP):
        return GF if x.p == DEFAULT_PRIME else PrimeField(x.p)
    return QQ


def to_str(x) -> str:
    """Serialise a scalar: ``"num/den"`` for rationals, the residue for ModP."""
    if isinstance(x, ModP):
        return str(x.v)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
