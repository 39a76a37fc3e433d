"""Exact base fields: the rationals and prime fields.

Two kinds of scalars are supported: arbitrary-precision rationals
(`fractions.Fraction`, always reduced with positive denominator) and
residues modulo a prime p (plain `int` in ``[0, p)``). A `Field` object
carries the arithmetic; matrices, subspaces and polynomials store raw
scalar values plus a field reference, so the linear algebra is field
agnostic.

Scalars serialize as decimal strings: ``"a/b"`` or ``"a"`` for rationals,
``"k mod p"`` for residues.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cache

from .errors import ValidationError

MAX_PRIME = 2**31

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")
_RESIDUE_RE = re.compile(r"^(\d+) mod (\d+)$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface for exact scalar arithmetic."""

    characteristic: int

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def coerce(self, value):
        """Turn an int, a native scalar, or a serialized string into a scalar."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class RationalField(Field):
    """The field of rational numbers; scalars are `Fraction` values."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise ValidationError(f"cannot coerce {value!r} to a rational scalar")

    def parse(self, text: str):
        if not _RATIONAL_RE.match(text):
            raise ValidationError(f"malformed rational scalar {text!r}")
        return Fraction(text)

    def format(self, a) -> str:
        return str(a)

    def describe(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """The integers modulo a prime p; scalars are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValidationError(f"modulus {p!r} is not prime")
        if p >= MAX_PRIME:
            raise ValidationError(f"modulus {p} exceeds the supported bound 2^31")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def coerce(self, value):
        if isinstance(value, bool):
            raise ValidationError("booleans are not scalars")
        if isinstance(value, int):
            if 0 <= value < self.p:
                return value
            raise ValidationError(f"residue {value} not reduced mod {self.p}")
        if isinstance(value, str):
            return self.parse(value)
        raise ValidationError(f"cannot coerce {value!r} to a residue mod {self.p}")

    def parse(self, text: str):
        m = _RESIDUE_RE.match(text)
        if not m:
            raise ValidationError(f"malformed residue scalar {text!r}")
        k, p = int(m.group(1)), int(m.group(2))
        if p != self.p:
            raise ValidationError(f"residue {text!r} has modulus {p}, expected {self.p}")
        if k >= p:
            raise ValidationError(f"residue {text!r} is not reduced")
        return k

    def format(self, a) -> str:
        return f"{a} mod {self.p}"

    def describe(self) -> str:
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@cache
def GF(p: int) -> PrimeField:
    """The prime field with p elements (cached per modulus)."""
    return PrimeField(p)


def field_from_description(desc) -> Field:
    """Inverse of `Field.describe` / the JSON ``field`` entry."""
    if desc == "Q":
        return QQ
    if isinstance(desc, dict) and set(desc) == {"Fp"}:
        p = desc["Fp"]
        if not isinstance(p, int):
            raise ValidationError(f"bad prime field modulus {p!r}")
        return GF(p)
    if isinstance(desc, str) and desc.startswith("F"):
        try:
            return GF(int(desc[1:]))
        except ValueError:
            pass
    raise ValidationError(f"unknown field description {desc!r}")
