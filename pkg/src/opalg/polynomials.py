"""Univariate polynomials over an exact field.

Coefficients are stored lowest degree first with no trailing zeros, so
the zero polynomial has an empty coefficient tuple and every polynomial
has a unique representation. Used for minimal polynomials of matrices and
the idempotent-splitting machinery built on their factorizations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .fields import Field
from .linalg import Matrix


@dataclass(frozen=True)
class Polynomial:
    field: Field
    coeffs: tuple

    @classmethod
    def from_coeffs(cls, field: Field, coeffs) -> Polynomial:
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        return cls(field, tuple(cs))

    @classmethod
    def zero(cls, field: Field) -> Polynomial:
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> Polynomial:
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field: Field) -> Polynomial:
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field: Field, c) -> Polynomial:
        return cls.from_coeffs(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if self.is_zero:
            raise ValidationError("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __add__(self, other: Polynomial) -> Polynomial:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial.from_coeffs(F, out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __neg__(self) -> Polynomial:
        neg = self.field.neg
        return Polynomial(self.field, tuple(neg(c) for c in self.coeffs))

    def __mul__(self, other: Polynomial) -> Polynomial:
        F = self.field
        if self.is_zero or other.is_zero:
            return Polynomial.zero(F)
        add, mul = F.add, F.mul
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = add(out[i + j], mul(a, b))
        return Polynomial.from_coeffs(F, out)

    def scale(self, c) -> Polynomial:
        mul = self.field.mul
        return Polynomial.from_coeffs(self.field, [mul(c, a) for a in self.coeffs])

    def monic(self) -> Polynomial:
        if self.is_zero:
            raise ValidationError("cannot normalize the zero polynomial")
        return self.scale(self.field.inv(self.leading))

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        sub, mul = F.sub, F.mul
        dlead = F.inv(other.leading)
        rem = list(self.coeffs)
        dn = other.degree
        if self.degree < dn:
            return Polynomial.zero(F), self
        quo = [F.zero] * (self.degree - dn + 1)
        for k in range(len(quo) - 1, -1, -1):
            c = mul(rem[k + dn], dlead)
            if c:
                quo[k] = c
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = sub(rem[k + i], mul(c, b))
        return Polynomial.from_coeffs(F, quo), Polynomial.from_coeffs(F, rem)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValidationError("negative polynomial power")
        result = Polynomial.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pow_mod(self, k: int, modulus: Polynomial) -> Polynomial:
        if k < 0:
            raise ValidationError("negative polynomial power")
        result = Polynomial.one(self.field) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            k >>= 1
            if k:
                base = (base * base) % modulus
        return result

    def gcd(self, other: Polynomial) -> Polynomial:
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()

    def derivative(self) -> Polynomial:
        F = self.field
        mul = F.mul
        return Polynomial.from_coeffs(
            F, [mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def evaluate_matrix(self, m: Matrix) -> Matrix:
        if m.rows != m.cols:
            raise ValidationError("polynomial evaluation needs a square matrix")
        n = m.rows
        acc = Matrix.zeros(self.field, n, n)
        ident = Matrix.identity(self.field, n)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident.scale(c)
        return acc

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        fmt = self.field.format
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(fmt(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if c == self.field.one else f"({fmt(c)})*{xs}")
        return " + ".join(parts)


def min_poly(m: Matrix) -> Polynomial:
    """Monic polynomial of least degree annihilating a square matrix,
    found at the first linear dependence among I, m, m^2, ..."""
    if m.rows != m.cols:
        raise ValidationError("minimal polynomial of a non-square matrix")
    F = m.field
    n = m.rows
    if n == 0:
        return Polynomial.one(F)
    sub, mul, inv = F.sub, F.mul, F.inv
    rows: list[tuple[int, list, list]] = []  # (pivot, reduced power, combination)
    power = Matrix.identity(F, n)
    k = 0
    while True:
        v = list(power.vec())
        aug = [F.zero] * k + [F.one]
        for piv, row, raug in rows:
            c = v[piv]
            if c:
                v = [sub(x, mul(c, y)) for x, y in zip(v, row)]
                for i, y in enumerate(raug):
                    aug[i] = sub(aug[i], mul(c, y))
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return Polynomial.from_coeffs(F, aug)
        c = inv(v[piv])
        rows.append((piv, [mul(c, x) for x in v], [mul(c, x) for x in aug] + [F.zero] * 0))
        power = power @ m
        k += 1
        if k > n * n + 1:
            raise ValidationError("minimal polynomial iteration failed to terminate")
