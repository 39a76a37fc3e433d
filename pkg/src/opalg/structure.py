"""Radical, simplicity, and minimal-ideal decomposition.

The radical pipeline: take the Jacobson radical J of the action algebra
(via the trace form of its faithful action, valid in characteristic 0 or
p > dim A), quotient A by J*A to get the maximal semisimple submodule
quotient, then quotient again by the common kernel of the multiplication
algebra. The kernel of the composed projection is the radical; the final
quotient is the largest semisimple quotient, and recomputing its radical
gives zero.

Semisimple algebras split into pairwise non-isomorphic minimal ideals.
The splitting uses the center of the action algebra: factoring minimal
polynomials of central elements refines A into the common generalized
eigenspace components, and a per-component certification step (a
Frobenius fixed-point computation over prime fields, a primitive-element
search over the rationals) finishes the refinement so every component is
a single minimal ideal. The resulting projections are certified to lie in
the multiplication algebra, which is what makes each component an ideal
rather than a mere submodule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .algebra import (AlgebraPresentation, MultilinearOp, OperatorAlgebras,
                      build_operator_algebras, quotient_algebra)
from .errors import FieldGuardError, TheoremContradictionError, ValidationError
from .factorization import factor
from .fields import Field
from .linalg import Matrix, SpanBuilder, Subspace, stacked_kernel
from .polynomials import min_poly


@dataclass(frozen=True)
class RadicalReport:
    """Everything the radical computation produces in one pass."""

    operator_radical: Subspace        # Jacobson radical of the action algebra
    radical: Subspace                 # of A: kernel of the projection
    semisimple_part: AlgebraPresentation
    projection: Matrix                # A onto the semisimple part


@dataclass(frozen=True)
class Decomposition:
    """Minimal ideals of a semisimple algebra with induced presentations
    and the projection idempotents onto each summand."""

    summands: tuple[tuple[Subspace, AlgebraPresentation], ...]
    idempotents: tuple[Matrix, ...]


def _field_guard(field: Field, module_dim: int) -> None:
    p = field.characteristic
    if 0 < p <= module_dim:
        raise FieldGuardError(
            f"characteristic too small: trace-form radical needs p > {module_dim}, got p = {p}")


def jacobson_radical(ops: OperatorAlgebras, module_dim: int) -> Subspace:
    """Radical of the action algebra as the radical of its trace form on
    the faithful module, verified nilpotent."""
    _field_guard(ops.algebra.field, module_dim)
    F = ops.algebra.field
    n = ops.algebra.dim
    basis = ops.basis_of(ops.action_algebra)
    r = len(basis)
    gram_rows = []
    for x in basis:
        row = []
        for y in basis:
            s = F.zero
            for a in range(n):
                xa = x.entries[a]
                for b in range(n):
                    v = xa[b]
                    if v:
                        w = y.entries[b][a]
                        if w:
                            s = F.add(s, F.mul(v, w))
            row.append(s)
        gram_rows.append(tuple(row))
    gram = Matrix(F, r, r, tuple(gram_rows))
    coeff_space = gram.kernel()
    span = SpanBuilder(F, n * n)
    mats = []
    for coeffs in coeff_space.basis:
        acc = Matrix.zeros(F, n, n)
        for c, m in zip(coeffs, basis):
            if c:
                acc = acc + m.scale(c)
        if span.insert(acc.vec()):
            mats.append(acc)
    radical_ops = span.to_subspace()
    # nilpotency certificate: iterated products must vanish within dim A steps
    current = mats
    for _ in range(module_dim):
        if not current:
            break
        nxt = SpanBuilder(F, n * n)
        nxt_mats = []
        for x in current:
            for j in mats:
                prod = x @ j
                if nxt.insert(prod.vec()):
                    nxt_mats.append(prod)
        current = nxt_mats
    if current:
        raise TheoremContradictionError(
            "trace-form radical is not nilpotent",
            {"module_dim": module_dim, "radical_dim": radical_ops.dim})
    return radical_ops


@lru_cache(maxsize=None)
def radical(algebra: AlgebraPresentation) -> RadicalReport:
    """Radical of A and its maximal semisimple quotient."""
    _field_guard(algebra.field, algebra.dim)
    F = algebra.field
    n = algebra.dim
    ops = build_operator_algebras(algebra)
    j_ops = jacobson_radical(ops, n)
    lowered = SpanBuilder(F, n)
    for jm in j_ops.basis_matrices(n, n):
        for i in range(n):
            lowered.insert(jm.apply(algebra.basis_vector(i)))
    module_radical = lowered.to_subspace()
    prime, proj1 = quotient_algebra(algebra, module_radical)
    prime_ops = build_operator_algebras(prime)
    annihilated = stacked_kernel(
        F, prime_ops.basis_of(prime_ops.multiplication_algebra), prime.dim)
    semisimple, proj2 = quotient_algebra(prime, annihilated)
    projection = proj2 @ proj1
    rad = projection.kernel()
    report = RadicalReport(
        operator_radical=j_ops,
        radical=rad,
        semisimple_part=semisimple,
        projection=projection,
    )
    if rad.dim:
        inner = radical(semisimple)
        if inner.radical.dim:
            raise TheoremContradictionError(
                "radical of the semisimple quotient is nonzero",
                {"outer_radical_dim": rad.dim, "inner_radical_dim": inner.radical.dim})
    return report


def is_semisimple(algebra: AlgebraPresentation) -> bool:
    return radical(algebra).radical.dim == 0


def _center_matrices(ops: OperatorAlgebras) -> list[Matrix]:
    """Basis of the center of the action algebra: elements commuting with
    its generating set, solved inside the algebra's own coordinates."""
    F = ops.algebra.field
    n = ops.algebra.dim
    basis = ops.basis_of(ops.action_algebra)
    r = len(basis)
    if r == 0:
        return []
    rows = []
    for g in ops.generators:
        comms = [(b @ g - g @ b).vec() for b in basis]
        for pos in range(n * n):
            row = tuple(comms[i][pos] for i in range(r))
            if any(row):
                rows.append(row)
    if not rows:
        coeff_kernel = Subspace.full(F, r)
    else:
        coeff_kernel = Matrix(F, len(rows), r, tuple(rows)).kernel()
    span = SpanBuilder(F, n * n)
    out = []
    for coeffs in coeff_kernel.basis:
        acc = Matrix.zeros(F, n, n)
        for c, m in zip(coeffs, basis):
            if c:
                acc = acc + m.scale(c)
        if span.insert(acc.vec()):
            out.append(acc)
    return span.to_subspace().basis_matrices(n, n)


def _restrict(op: Matrix, component: Subspace) -> Matrix:
    """Matrix of an operator restricted to an invariant subspace, in the
    subspace's canonical basis coordinates."""
    cols = []
    for b in component.basis:
        coords = component.coords_of(op.apply(b))
        if coords is None:
            raise TheoremContradictionError("operator does not preserve its component")
        cols.append(coords)
    k = component.dim
    return Matrix(op.field, k, k, tuple(tuple(col[i] for col in cols) for i in range(k)))


def _lift_component(component: Subspace, coord_vectors) -> Subspace:
    """Map component-coordinate vectors back into the ambient space."""
    F = component.field
    out = []
    for cv in coord_vectors:
        acc = [F.zero] * component.ambient_dim
        for c, row in zip(cv, component.basis):
            if c:
                for i, x in enumerate(row):
                    if x:
                        acc[i] = F.add(acc[i], F.mul(c, x))
        out.append(acc)
    return Subspace.from_vectors(F, component.ambient_dim, out)


def _split_by(component: Subspace, local_op: Matrix) -> list[Subspace]:
    """Refine a component into the generalized eigenspace kernels of the
    irreducible factors of a restricted operator's minimal polynomial."""
    mp = min_poly(local_op)
    factors = factor(mp)
    if len(factors) == 1 and factors[0][1] == 1:
        return [component]
    pieces = []
    total = 0
    for q, mult in factors:
        mat = q.evaluate_matrix(local_op).power(mult)
        local_kernel = mat.kernel()
        piece = _lift_component(component, local_kernel.basis)
        total += piece.dim
        pieces.append(piece)
    if total != component.dim:
        raise TheoremContradictionError("component refinement lost dimensions",
                                        {"expected": component.dim, "got": total})
    return pieces


def _certify_and_split(component: Subspace, center: list[Matrix]) -> list[Subspace]:
    """Finish refining one component until it is a single minimal ideal.

    The center restricted to the component is a commutative algebra; the
    component is a single minimal ideal exactly when that restriction is a
    field. Over a prime field the fixed space of the Frobenius map decides
    this and supplies splitting elements; over the rationals a primitive
    element does.
    """
    F = component.field
    k = component.dim
    if k == 0:
        return []
    span = SpanBuilder(F, k * k)
    local = []
    for z in center:
        rz = _restrict(z, component)
        if span.insert(rz.vec()):
            local.append(rz)
    restricted = span.to_subspace()
    r = restricted.dim
    if r <= 1:
        return [component]
    local = list(restricted.basis_matrices(k, k))
    p = F.characteristic
    if p:
        frob_cols = []
        for u in local:
            up = u.power(p)
            coords = restricted.coords_of(up.vec())
            if coords is None:
                raise TheoremContradictionError("Frobenius escapes the restricted center")
            frob_cols.append(coords)
        frob = Matrix(F, r, r, tuple(tuple(col[i] for col in frob_cols) for i in range(r)))
        fixed = (frob - Matrix.identity(F, r)).kernel()
        if fixed.dim <= 1:
            return [component]
        pieces = [component]
        for coeffs in fixed.basis:
            acc = Matrix.zeros(F, k, k)
            for c, u in zip(coeffs, local):
                if c:
                    acc = acc + u.scale(c)
            refined = []
            for piece in pieces:
                if piece.dim <= 1:
                    refined.append(piece)
                    continue
                local_op = _restrict_into(acc, component, piece)
                refined.extend(_split_by(piece, local_op))
            pieces = refined
        return pieces
    # rationals: search for a primitive element of the restricted center
    limit = 4 * r * r + 4
    for t in range(limit):
        theta = Matrix.zeros(F, k, k)
        weight = F.one
        for u in local:
            theta = theta + u.scale(weight)
            weight = F.mul(weight, F.from_int(t))
        mp = min_poly(theta)
        if mp.degree == r:
            factors = factor(mp)
            if any(mult != 1 for _, mult in factors):
                raise TheoremContradictionError(
                    "restricted center has a non-semisimple primitive element")
            if len(factors) == 1:
                return [component]
            return _split_by(component, theta)
    raise TheoremContradictionError(
        "primitive element search exhausted its budget", {"center_dim": r})


def _restrict_into(local_on_component: Matrix, component: Subspace,
                   piece: Subspace) -> Matrix:
    """Restrict an operator given in component coordinates to a piece of
    that component (piece given in ambient coordinates)."""
    cols = []
    for b in piece.basis:
        comp_coords = component.coords_of(b)
        image = local_on_component.apply(comp_coords)
        F = component.field
        ambient = [F.zero] * component.ambient_dim
        for c, row in zip(image, component.basis):
            if c:
                for i, x in enumerate(row):
                    if x:
                        ambient[i] = F.add(ambient[i], F.mul(c, x))
        coords = piece.coords_of(tuple(ambient))
        if coords is None:
            raise TheoremContradictionError("operator does not preserve its piece")
        cols.append(coords)
    k = piece.dim
    return Matrix(component.field, k, k,
                  tuple(tuple(col[i] for col in cols) for i in range(k)))


def _minimal_ideal_subspaces(algebra: AlgebraPresentation) -> list[Subspace]:
    """The minimal ideals of a semisimple algebra, in canonical order."""
    if algebra.dim == 0:
        return []
    ops = build_operator_algebras(algebra)
    center = _center_matrices(ops)
    components = [Subspace.full(algebra.field, algebra.dim)]
    for z in center:
        refined = []
        for comp in components:
            if comp.dim <= 1:
                refined.append(comp)
                continue
            refined.extend(_split_by(comp, _restrict(z, comp)))
        components = refined
    final: list[Subspace] = []
    for comp in components:
        final.extend(_certify_and_split(comp, center))
    final.sort(key=lambda s: s.sort_key())
    return final


def _restricted_presentation(algebra: AlgebraPresentation,
                             component: Subspace) -> AlgebraPresentation:
    """The induced presentation on a minimal ideal, in its canonical basis."""
    F = algebra.field
    k = component.dim
    new_ops = []
    for op in algebra.ops:
        entries = {}
        for idx in product(range(k), repeat=op.arity):
            image = algebra.apply(op, [component.basis[i] for i in idx])
            coords = component.coords_of(image)
            if coords is None:
                raise TheoremContradictionError(
                    "summand is not closed under an operation", {"operation": op.name})
            for out_k, c in enumerate(coords):
                if c:
                    entries[(out_k,) + idx] = c
        new_ops.append(MultilinearOp.from_entries(F, op.name, op.arity, k, entries))
    return AlgebraPresentation(F, k, tuple(new_ops))


def _decompose_subspaces(algebra: AlgebraPresentation) -> Decomposition:
    """Decomposition with idempotent certificates but without the
    per-summand simplicity re-verification (which would recurse)."""
    if radical(algebra).radical.dim != 0:
        raise ValidationError("minimal ideal decomposition requires a semisimple algebra")
    F = algebra.field
    n = algebra.dim
    parts = _minimal_ideal_subspaces(algebra)
    total = sum(p.dim for p in parts)
    if total != n:
        raise TheoremContradictionError(
            "components do not fill the algebra", {"expected": n, "got": total})
    columns = [row for p in parts for row in p.basis]
    if n:
        change = Matrix(F, n, n, tuple(tuple(col[i] for col in columns) for i in range(n)))
        inverse = change.inverse()
        if inverse is None:
            raise TheoremContradictionError("component bases are not independent")
    idempotents = []
    ops = build_operator_algebras(algebra)
    offset = 0
    for p in parts:
        z, o = F.zero, F.one
        diag = Matrix(F, n, n, tuple(
            tuple(o if (i == j and offset <= i < offset + p.dim) else z for j in range(n))
            for i in range(n)))
        proj = change @ diag @ inverse
        if not ops.multiplication_algebra.contains_vector(proj.vec()):
            raise TheoremContradictionError(
                "summand projection lies outside the multiplication algebra",
                {"summand_dim": p.dim})
        idempotents.append(proj)
        offset += p.dim
    ident = Matrix.identity(F, n)
    acc = Matrix.zeros(F, n, n)
    for i, pi in enumerate(idempotents):
        acc = acc + pi
        for j, pj in enumerate(idempotents):
            prod = pi @ pj
            expect = pi if i == j else Matrix.zeros(F, n, n)
            if prod != expect:
                raise TheoremContradictionError("projections are not orthogonal idempotents")
    if n and acc != ident:
        raise TheoremContradictionError("projections do not sum to the identity")
    summands = tuple((p, _restricted_presentation(algebra, p)) for p in parts)
    return Decomposition(summands=summands, idempotents=tuple(idempotents))


def is_simple(algebra: AlgebraPresentation) -> bool:
    """A nonzero multiplication algebra, zero radical, and a single
    minimal ideal. When true, the classical consequences are asserted:
    multiplication and action algebras coincide, the operator radical is
    zero, and the center is a field (each central basis element has an
    irreducible minimal polynomial)."""
    ops = build_operator_algebras(algebra)
    if ops.multiplication_algebra.dim == 0:
        return False
    if radical(algebra).radical.dim != 0:
        return False
    dec = _decompose_subspaces(algebra)
    if len(dec.summands) != 1:
        return False
    if ops.multiplication_algebra != ops.action_algebra:
        raise TheoremContradictionError(
            "simple algebra whose multiplication and action algebras differ")
    if jacobson_radical(ops, algebra.dim).dim != 0:
        raise TheoremContradictionError("simple algebra with a nonzero operator radical")
    for z in _center_matrices(ops):
        facs = factor(min_poly(z))
        if len(facs) != 1 or facs[0][1] != 1:
            raise TheoremContradictionError(
                "center of a simple algebra is not a field",
                {"minimal_polynomial": str(min_poly(z))})
    return True


@lru_cache(maxsize=None)
def minimal_ideal_decomposition(algebra: AlgebraPresentation) -> Decomposition:
    """Split a semisimple algebra into its minimal ideals, certify the
    projections, and verify every summand is simple."""
    dec = _decompose_subspaces(algebra)
    for _, summand in dec.summands:
        if not is_simple(summand):
            raise TheoremContradictionError(
                "decomposition produced a non-simple summand", {"dim": summand.dim})
    return dec


def semisimple_quotient_test(algebra: AlgebraPresentation, ideal: Subspace) -> bool:
    """Whether A/I is semisimple; asserted equal to the containment of the
    radical in the ideal."""
    quotient, _ = quotient_algebra(algebra, ideal)
    by_quotient = is_semisimple(quotient)
    by_radical = ideal.contains(radical(algebra).radical)
    if by_quotient != by_radical:
        raise TheoremContradictionError(
            "semisimple quotient disagrees with radical containment",
            {"quotient_semisimple": by_quotient, "radical_contained": by_radical})
    return by_quotient
