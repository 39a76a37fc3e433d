"""Factorization of univariate polynomials into monic irreducibles.

Over a prime field the pipeline is squarefree decomposition, then
distinct-degree splitting, then equal-degree splitting with a
deterministic candidate sequence (so re-runs produce identical output).
Over the rationals: squarefree decomposition, rational root extraction,
then factorization modulo a good prime lifted with Hensel's lemma and
finished by subset recombination. Degrees stay small here, so no lattice
reduction is needed.

`factor` returns monic irreducible factors with multiplicities sorted by
(degree, coefficients); multiplying them together with the input's
leading coefficient reproduces the input exactly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd as int_gcd, isqrt

from .errors import ValidationError, TheoremContradictionError
from .fields import QQ
from .polynomials import Polynomial

_EDF_CANDIDATE_LIMIT = 100_000


def factor(f: Polynomial) -> tuple[tuple[Polynomial, int], ...]:
    """Monic irreducible factors of f with multiplicities.

    The product of the factors (with multiplicities) times the leading
    coefficient of f equals f.
    """
    if f.is_zero:
        raise ValidationError("cannot factor the zero polynomial")
    if f.degree == 0:
        return ()
    monic = f.monic()
    if f.field.characteristic == 0:
        raw = _factor_monic_rational(monic)
    else:
        raw = _factor_monic_fp(monic)
    merged: dict[Polynomial, int] = {}
    for g, m in raw:
        merged[g] = merged.get(g, 0) + m
    return tuple(sorted(merged.items(), key=lambda it: it[0].sort_key()))


# ---------------------------------------------------------------- prime fields

def _squarefree_fp(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Squarefree decomposition of a monic polynomial in characteristic p."""
    p = f.field.characteristic
    one = Polynomial.one(f.field)
    out: list[tuple[Polynomial, int]] = []
    c = f.gcd(f.derivative())
    w = f // c
    i = 1
    while w != one:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c != one:
        # c is a p-th power; over the prime field a coefficient is its own p-th root
        root = Polynomial.from_coeffs(f.field, [c.coeffs[j] for j in range(0, len(c.coeffs), p)])
        for g, m in _squarefree_fp(root):
            out.append((g, m * p))
    return out


def _distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split a monic squarefree polynomial into products of irreducibles of
    equal degree, returned as (product, degree) pairs."""
    F = f.field
    p = F.characteristic
    x = Polynomial.x(F)
    out = []
    h = x % f
    k = f
    d = 0
    while k.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(p, k)
        g = k.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            k = k // g
            h = h % k
    if k.degree > 0:
        out.append((k, k.degree))
    return out


def _nth_candidate(field, j: int) -> Polynomial:
    """Deterministic enumeration of nonconstant polynomials over F_p."""
    p = field.characteristic
    digits = []
    while j:
        digits.append(j % p)
        j //= p
    return Polynomial.from_coeffs(field, digits)


def _equal_degree(f: Polynomial, d: int) -> list[Polynomial]:
    """Split a monic squarefree product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    F = f.field
    p = F.characteristic
    one = Polynomial.one(F)
    for j in range(p, _EDF_CANDIDATE_LIMIT):
        a = _nth_candidate(F, j) % f
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
        if p == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                acc = (acc * acc) % f
                t = t + acc
            t = t % f
        else:
            t = a.pow_mod((p ** d - 1) // 2, f) - one
        g = f.gcd(t)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
    raise TheoremContradictionError(
        "equal-degree splitting exhausted its candidate budget",
        {"polynomial": str(f), "block_degree": d})


def _factor_monic_fp(f: Polynomial) -> list[tuple[Polynomial, int]]:
    out = []
    for g, mult in _squarefree_fp(f):
        for block, d in _distinct_degree(g):
            for irr in _equal_degree(block, d):
                out.append((irr, mult))
    return out


# ------------------------------------------------------------------ rationals

def _yun_squarefree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's squarefree decomposition (characteristic 0, monic input)."""
    out = []
    df = f.derivative()
    a = f.gcd(df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        ai = b.gcd(d)
        if ai.degree > 0:
            out.append((ai, i))
        b = b // ai
        c = d // ai
        d = c - b.derivative()
        i += 1
    return out


def _to_int_poly(f: Polynomial) -> list[int]:
    """Clear denominators and content; primitive with positive leading
    coefficient."""
    denom = 1
    for c in f.coeffs:
        denom = denom * c.denominator // int_gcd(denom, c.denominator)
    ints = [int(c * denom) for c in f.coeffs]
    content = 0
    for c in ints:
        content = int_gcd(content, c)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_divides(num: list[int], den: list[int]) -> list[int] | None:
    """Exact division of primitive integer polynomials, None if not exact."""
    a = Polynomial.from_coeffs(QQ, [Fraction(c) for c in num])
    b = Polynomial.from_coeffs(QQ, [Fraction(c) for c in den])
    q, r = a.divmod(b)
    if not r.is_zero:
        return None
    if any(c.denominator != 1 for c in q.coeffs):
        return None
    return [int(c) for c in q.coeffs]


def _rational_roots(g: Polynomial) -> tuple[list[Fraction], Polynomial]:
    """Roots of a squarefree monic rational polynomial, plus the rootless
    cofactor."""
    ints = _to_int_poly(g)
    a0, an = ints[0], ints[-1]
    roots = []
    num_divs = _divisors(abs(a0))
    den_divs = _divisors(abs(an))
    candidates = sorted({Fraction(s * pn, qn) for pn in num_divs for qn in den_divs for s in (1, -1)})
    current = g
    for r in candidates:
        if current.degree < 1:
            break
        if not current.evaluate(r):
            roots.append(r)
            current = current // Polynomial.from_coeffs(QQ, [-r, 1])
    return roots, current


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


_SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113]


def _factor_monic_rational(f: Polynomial) -> list[tuple[Polynomial, int]]:
    out: list[tuple[Polynomial, int]] = []
    # powers of x split off first so every squarefree part has a nonzero
    # constant term, as the rational root scan requires
    shift = 0
    coeffs = list(f.coeffs)
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        shift += 1
    if shift:
        out.append((Polynomial.x(QQ), shift))
    rest = Polynomial.from_coeffs(QQ, coeffs)
    if rest.degree < 1:
        return out
    for g, mult in _yun_squarefree(rest):
        roots, cofactor = _rational_roots(g)
        for r in roots:
            out.append((Polynomial.from_coeffs(QQ, [-r, 1]), mult))
        if cofactor.degree >= 1:
            for irr in _zassenhaus(cofactor):
                out.append((irr, mult))
    return out


def _zassenhaus(g: Polynomial) -> list[Polynomial]:
    """Factor a squarefree monic rational polynomial with no rational
    roots; returns monic irreducible factors."""
    if g.degree <= 3:
        # no roots means no linear factors, so degree 2 and 3 are irreducible
        return [g]
    ints = _to_int_poly(g)
    n = len(ints) - 1
    prime = None
    for p in _SMALL_PRIMES:
        if ints[-1] % p == 0:
            continue
        field = _gf(p)
        fp = Polynomial.from_coeffs(field, [c % p for c in ints])
        if fp.gcd(fp.derivative()).degree == 0:
            prime = p
            break
    if prime is None:
        raise TheoremContradictionError(
            "no good prime found for modular factorization", {"polynomial": str(g)})
    field = _gf(prime)
    fp = Polynomial.from_coeffs(field, [c % prime for c in ints]).monic()
    mod_factors = []
    for block, d in _distinct_degree(fp):
        mod_factors.extend(_equal_degree(block, d))
    mod_factors.sort(key=lambda h: h.sort_key())
    if len(mod_factors) == 1:
        return [g]
    height = max(abs(c) for c in ints)
    bound = 2 ** n * (n + 1) * height * abs(ints[-1])
    k = 1
    modulus = prime
    while modulus < 2 * bound + 1:
        modulus *= prime
        k += 1
    lifted = _lift_tree(ints, [_poly_to_ints(h) for h in mod_factors], prime, modulus)
    return _recombine(ints, lifted, modulus)


def _gf(p):
    from .fields import GF
    return GF(p)


def _poly_to_ints(f: Polynomial) -> list[int]:
    return [int(c) for c in f.coeffs]


# Integer polynomial arithmetic modulo m (coefficient lists, lowest first,
# reduced into [0, m)).

def _ztrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zadd(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return _ztrim(out)


def _zsub(a, b, m):
    out = [c % m for c in a] + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    return _ztrim(out)


def _zmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] = (out[i + j] + c * d) % m
    return _ztrim(out)


def _zdivmod(a, b, m):
    """Division with remainder; the leading coefficient of b must be a
    unit modulo m."""
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    rem = [c % m for c in a]
    if len(rem) < len(b):
        return [], _ztrim(rem)
    quo = [0] * (len(rem) - len(b) + 1)
    for k in range(len(quo) - 1, -1, -1):
        c = (rem[k + len(b) - 1] * inv) % m
        if c:
            quo[k] = c
            for i, d in enumerate(b):
                rem[k + i] = (rem[k + i] - c * d) % m
    return _ztrim(quo), _ztrim(rem)


def _zp_gcdext(a, b, p):
    """Extended Euclid over F_p: returns (gcd monic, s, t)."""
    r0, r1 = [c % p for c in a], [c % p for c in b]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    _ztrim(r0)
    _ztrim(r1)
    while r1:
        q, r = _zdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zsub(s0, _zmul(q, s1, p), p)
        t0, t1 = t1, _zsub(t0, _zmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    scale = lambda v: _ztrim([(c * inv) % p for c in v])
    return scale(r0), scale(s0), scale(t0)


def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: from f = g*h and s*g + t*h = 1 (mod m)
    with h monic, to the same identities mod m**2."""
    mm = m * m
    e = _zsub(f, _zmul(g, h, mm), mm)
    q, r = _zdivmod(_zmul(s, e, mm), h, mm)
    g1 = _zadd(g, _zadd(_zmul(t, e, mm), _zmul(q, g, mm), mm), mm)
    h1 = _zadd(h, r, mm)
    b = _zsub(_zadd(_zmul(s, g1, mm), _zmul(t, h1, mm), mm), [1], mm)
    c, d = _zdivmod(_zmul(s, b, mm), h1, mm)
    s1 = _zsub(s, d, mm)
    t1 = _zsub(t, _zadd(_zmul(t, b, mm), _zmul(c, g1, mm), mm), mm)
    return g1, h1, s1, t1


def _lift_tree(f: list[int], factors: list[list[int]], p: int, modulus: int) -> list[list[int]]:
    """Lift a mod-p factorization of f to monic factors mod `modulus`
    (a power of p), splitting the factor list recursively in halves."""
    f = [c % modulus for c in f]
    _ztrim(f)
    if len(factors) == 1:
        inv = pow(f[-1], -1, modulus)
        return [_ztrim([(c * inv) % modulus for c in f])]
    half = len(factors) // 2
    group1, group2 = factors[:half], factors[half:]
    h0 = [1]
    for fac in group1:
        h0 = _zmul(h0, fac, p)
    g0, rem = _zdivmod([c % p for c in f], h0, p)
    if rem:
        raise TheoremContradictionError("modular factor product does not divide", {})
    _, s, t = _zp_gcdext(g0, h0, p)
    # normalize Bezout degrees: s*g0 + t*h0 = 1 with deg s < deg h0
    q, s = _zdivmod(s, h0, p)
    t = _zadd(t, _zmul(q, g0, p), p)
    m = p
    g, h = g0, h0
    while m < modulus:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    g = [c % modulus for c in g]
    h = [c % modulus for c in h]
    return _lift_tree(g, group2, p, modulus) + _lift_tree(h, group1, p, modulus)


def _symmetric(c: int, m: int) -> int:
    return c - m if c > m // 2 else c


def _primitive_int(coeffs: list[int]) -> list[int]:
    content = 0
    for c in coeffs:
        content = int_gcd(content, c)
    if content == 0:
        return coeffs
    out = [c // content for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _recombine(f: list[int], lifted: list[list[int]], modulus: int) -> list[Polynomial]:
    """Zassenhaus subset recombination of lifted modular factors."""
    remaining = list(range(len(lifted)))
    found: list[list[int]] = []
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for subset in combinations(remaining, size):
            prod = [f[-1] % modulus]
            for i in subset:
                prod = _zmul(prod, lifted[i], modulus)
            cand = _primitive_int(_ztrim([_symmetric(c, modulus) for c in prod]))
            if not cand:
                continue
            quotient = _int_divides(f, cand)
            if quotient is not None:
                found.append(cand)
                f = _primitive_int(quotient)
                remaining = [i for i in remaining if i not in subset]
                hit = True
                break
        if not hit:
            size += 1
    if len(f) > 1:
        found.append(f)
    out = []
    for ints in found:
        out.append(Polynomial.from_coeffs(QQ, [Fraction(c) for c in ints]).monic())
    return out
