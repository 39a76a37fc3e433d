"""Finite presentations of algebras by multilinear structure tensors, and
the operator algebras they act through.

An algebra is a finite-dimensional vector space together with a list of
named generating multilinear operations, each given by its structure
tensor: ``tensor[k][i1]...[in]`` is the k-th coordinate of the operation
applied to basis vectors ``e_{i1}, ..., e_{in}``. Ordinary associative,
commutative, and Lie algebras are the one-binary-operation cases; nothing
here assumes associativity or any other relation.

Three operator subspaces of End(A) drive all structure theory:

* the unary algebra: the unital multiplicative closure of the matrices of
  the arity-1 generating operations;
* the multiplication algebra: the closure of all one-slot partial
  applications of the operations of arity >= 2 (fixing basis vectors in
  the other slots) under products with itself and with the unary algebra;
* the action algebra: their sum, a unital algebra in which the
  multiplication algebra is a two-sided ideal.

A subspace is an ideal exactly when it is a submodule over the action
algebra; ideals, quotients, and direct sums are implemented on that
basis.

Why generating operations suffice: a one-slot partial application of a
composite operation factors as a fully-applied outer operation composed
with a partial application of the inner one in the distinguished slot
(and unary pre/post-composition). Hence the closure of the generator
partial applications under products with the unary algebra and with
itself already spans the partial applications of every derived operation.
This is the central algorithmic fact the module relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, cached_property
from itertools import product

from .errors import ValidationError, TheoremContradictionError
from .fields import Field
from .linalg import Matrix, SpanBuilder, Subspace


def _tensor_shape_ok(tensor, dims: tuple[int, ...]) -> bool:
    if not dims:
        return True
    if not isinstance(tensor, tuple) or len(tensor) != dims[0]:
        return False
    return all(_tensor_shape_ok(t, dims[1:]) for t in tensor)


def _coerce_tensor(field: Field, tensor, depth: int):
    if depth == 0:
        return field.coerce(tensor)
    return tuple(_coerce_tensor(field, t, depth - 1) for t in tensor)


@dataclass(frozen=True)
class MultilinearOp:
    """One generating operation, stored as its structure tensor."""

    name: str
    arity: int
    tensor: tuple

    def __post_init__(self):
        if self.arity < 1:
            raise ValidationError(f"operation {self.name!r} has arity < 1")

    @classmethod
    def from_entries(cls, field: Field, name: str, arity: int, dim: int, entries) -> MultilinearOp:
        """Build a tensor from a {(k, i1, ..., in): coefficient} mapping."""
        if arity < 1:
            raise ValidationError(f"operation {name!r} has arity < 1")

        def build(prefix):
            if len(prefix) == arity + 1:
                return field.coerce(entries.get(prefix, 0))
            return tuple(build(prefix + (i,)) for i in range(dim))

        return cls(name, arity, build(()))

    @classmethod
    def from_nested(cls, field: Field, name: str, arity: int, tensor) -> MultilinearOp:
        return cls(name, arity, _coerce_tensor(field, tensor, arity + 1))

    @cached_property
    def entries(self) -> tuple:
        """Sparse view: ((output coordinate, input index tuple, coefficient), ...)."""
        out = []

        def walk(node, prefix):
            if len(prefix) == self.arity + 1:
                if node:
                    out.append((prefix[0], prefix[1:], node))
                return
            for i, sub in enumerate(node):
                walk(sub, prefix + (i,))

        walk(self.tensor, ())
        return tuple(out)


@dataclass(frozen=True)
class AlgebraPresentation:
    """A finite presentation: field, dimension, generating operations."""

    field: Field
    dim: int
    ops: tuple[MultilinearOp, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValidationError("negative dimension")
        names = [op.name for op in self.ops]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate operation names")
        for op in self.ops:
            if not _tensor_shape_ok(op.tensor, (self.dim,) * (op.arity + 1)):
                raise ValidationError(
                    f"tensor of operation {op.name!r} does not match dimension {self.dim}")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ValidationError("label count does not match dimension")

    @property
    def unary_ops(self) -> tuple[MultilinearOp, ...]:
        """The arity-1 generating operations (the identity map is implicit
        and never stored)."""
        return tuple(op for op in self.ops if op.arity == 1)

    def op_named(self, name: str) -> MultilinearOp:
        for op in self.ops:
            if op.name == name:
                return op
        raise ValidationError(f"no operation named {name!r}")

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if j == i else z for j in range(self.dim))

    def apply(self, op: MultilinearOp | str | int, vectors) -> tuple:
        """Evaluate a generating operation on a tuple of coordinate vectors."""
        if isinstance(op, str):
            op = self.op_named(op)
        elif isinstance(op, int):
            op = self.ops[op]
        vectors = [tuple(v) for v in vectors]
        if len(vectors) != op.arity or any(len(v) != self.dim for v in vectors):
            raise ValidationError("operand count or width does not match the operation")
        F = self.field
        add, mul = F.add, F.mul
        out = [F.zero] * self.dim
        for k, idx, coeff in op.entries:
            term = coeff
            for v, i in zip(vectors, idx):
                x = v[i]
                if not x:
                    term = None
                    break
                term = mul(term, x)
            if term is not None:
                out[k] = add(out[k], term)
        return tuple(out)


def partial_apply(algebra: AlgebraPresentation, op_index: int, slot: int, fixed) -> Matrix:
    """The matrix of ``x -> op(a_1, ..., x, ..., a_{n-1})`` with x in the
    given slot (1-based) and the fixed vectors filling the other slots in
    order."""
    op = algebra.ops[op_index] if isinstance(op_index, int) else algebra.op_named(op_index)
    fixed = [tuple(v) for v in fixed]
    if len(fixed) != op.arity - 1:
        raise ValidationError("partial application needs arity-1 fixed vectors")
    if not 1 <= slot <= op.arity:
        raise ValidationError(f"slot {slot} out of range for arity {op.arity}")
    F = algebra.field
    n = algebra.dim
    add, mul = F.add, F.mul
    grid = [[F.zero] * n for _ in range(n)]
    pos = slot - 1
    for k, idx, coeff in op.entries:
        term = coeff
        fi = 0
        for spot, i in enumerate(idx):
            if spot == pos:
                continue
            x = fixed[fi][i]
            fi += 1
            if not x:
                term = None
                break
            term = mul(term, x)
        if term is not None:
            col = idx[pos]
            grid[k][col] = add(grid[k][col], term)
    return Matrix(F, n, n, tuple(tuple(row) for row in grid))


@dataclass(frozen=True)
class OperatorAlgebras:
    """The unary, multiplication, and action algebras of a presentation,
    as canonical operator subspaces of End(A) (ambient dimension dim^2).

    ``generators`` is the defining generating set of the action algebra
    (identity, unary operation matrices, and the seed partial
    applications); ``certificates`` records, for audit, which product
    produced each basis vector added during closure.
    """

    algebra: AlgebraPresentation
    unary_algebra: Subspace
    multiplication_algebra: Subspace
    action_algebra: Subspace
    generators: tuple[Matrix, ...]
    certificates: tuple[str, ...]

    def basis_of(self, which: Subspace) -> tuple[Matrix, ...]:
        n = self.algebra.dim
        return which.basis_matrices(n, n)


@lru_cache(maxsize=None)
def build_operator_algebras(algebra: AlgebraPresentation) -> OperatorAlgebras:
    """Construct the three operator algebras by breadth-first span growth,
    re-echelonizing after each product batch; terminates because all
    dimensions are bounded by dim^2."""
    n = algebra.dim
    N = n * n
    F = algebra.field
    certificates: list[str] = []

    unary_span = SpanBuilder(F, N)
    unary_mats: list[Matrix] = []

    def grow(span, mats, mat, why) -> bool:
        if span.insert(mat.vec()):
            mats.append(mat)
            certificates.append(why)
            return True
        return False

    ident = Matrix.identity(F, n)
    grow(unary_span, unary_mats, ident, "unary[0] = identity")
    seeds: list[Matrix] = [ident]
    for op in algebra.unary_ops:
        mat = partial_apply(algebra, op.name, 1, [])
        seeds.append(mat)
        grow(unary_span, unary_mats, mat, f"unary <- operation {op.name!r}")
    # multiplicative closure of the unary span
    frontier = list(unary_mats)
    while frontier and unary_span.dim < N:
        fresh: list[Matrix] = []
        snapshot = list(unary_mats)
        for f in frontier:
            for b in snapshot:
                for prod, why in ((f @ b, "unary <- product"), (b @ f, "unary <- product")):
                    if grow(unary_span, unary_mats, prod, why):
                        fresh.append(prod)
        frontier = fresh

    mult_span = SpanBuilder(F, N)
    mult_mats: list[Matrix] = []
    basis_vecs = [algebra.basis_vector(i) for i in range(n)]
    for oi, op in enumerate(algebra.ops):
        if op.arity < 2:
            continue
        for slot in range(1, op.arity + 1):
            for fixed in product(basis_vecs, repeat=op.arity - 1):
                mat = partial_apply(algebra, oi, slot, fixed)
                if grow(mult_span, mult_mats, mat,
                        f"mult <- partial application of {op.name!r} slot {slot}"):
                    seeds.append(mat)
    # close under products with the unary algebra and with itself
    frontier = list(mult_mats)
    while frontier and mult_span.dim < N:
        fresh = []
        snapshot = list(mult_mats)
        for f in frontier:
            for l in unary_mats:
                for prod in (l @ f, f @ l):
                    if grow(mult_span, mult_mats, prod, "mult <- unary product"):
                        fresh.append(prod)
            for e in snapshot:
                for prod in (e @ f, f @ e):
                    if grow(mult_span, mult_mats, prod, "mult <- internal product"):
                        fresh.append(prod)
        frontier = fresh

    action_span = SpanBuilder(F, N)
    for m in unary_mats:
        action_span.insert(m.vec())
    for m in mult_mats:
        action_span.insert(m.vec())

    return OperatorAlgebras(
        algebra=algebra,
        unary_algebra=unary_span.to_subspace(),
        multiplication_algebra=mult_span.to_subspace(),
        action_algebra=action_span.to_subspace(),
        generators=tuple(seeds),
        certificates=tuple(certificates),
    )


def verify_operator_algebras(ops: OperatorAlgebras) -> None:
    """Assert the closure identities literally: the identity operator lies
    in the unary algebra, all mixed products land in the multiplication
    algebra, and the action algebra is exactly their sum."""
    n = ops.algebra.dim
    ident = Matrix.identity(ops.algebra.field, n)
    if not ops.unary_algebra.contains_vector(ident.vec()):
        raise TheoremContradictionError("identity operator missing from the unary algebra")
    unary = ops.basis_of(ops.unary_algebra)
    mult = ops.basis_of(ops.multiplication_algebra)
    for e in mult:
        for other in mult:
            if not ops.multiplication_algebra.contains_vector((e @ other).vec()):
                raise TheoremContradictionError("multiplication algebra is not product-closed")
        for l in unary:
            if not ops.multiplication_algebra.contains_vector((l @ e).vec()):
                raise TheoremContradictionError("unary * mult product escapes")
            if not ops.multiplication_algebra.contains_vector((e @ l).vec()):
                raise TheoremContradictionError("mult * unary product escapes")
    if ops.unary_algebra.add(ops.multiplication_algebra) != ops.action_algebra:
        raise TheoremContradictionError("action algebra is not the sum of its parts")


def is_ideal(algebra: AlgebraPresentation, candidate: Subspace) -> bool:
    """Submodule test: closed under every basis operator of the action
    algebra."""
    if candidate.ambient_dim != algebra.dim:
        raise ValidationError("subspace ambient dimension does not match the algebra")
    ops = build_operator_algebras(algebra)
    for r in ops.basis_of(ops.action_algebra):
        for v in candidate.basis:
            if not candidate.contains_vector(r.apply(v)):
                return False
    return True


def is_ideal_by_definition(algebra: AlgebraPresentation, candidate: Subspace) -> bool:
    """Definition-level test: every generating operation with one operand
    in the subspace and the rest running over the basis of A lands back in
    the subspace. Must agree with `is_ideal` on every input."""
    if candidate.ambient_dim != algebra.dim:
        raise ValidationError("subspace ambient dimension does not match the algebra")
    basis_vecs = [algebra.basis_vector(i) for i in range(algebra.dim)]
    for op in algebra.ops:
        for slot in range(op.arity):
            for v in candidate.basis:
                for others in product(basis_vecs, repeat=op.arity - 1):
                    args = list(others[:slot]) + [v] + list(others[slot:])
                    if not candidate.contains_vector(algebra.apply(op, args)):
                        return False
    return True


def ideal_generated_by(algebra: AlgebraPresentation, seed: Subspace) -> Subspace:
    """Smallest ideal containing the seed: the submodule closure under the
    action algebra, iterated to a fixed point."""
    if seed.ambient_dim != algebra.dim:
        raise ValidationError("subspace ambient dimension does not match the algebra")
    ops = build_operator_algebras(algebra)
    action = ops.basis_of(ops.action_algebra)
    span = SpanBuilder(algebra.field, algebra.dim)
    for v in seed.basis:
        span.insert(v)
    frontier = [list(v) for v in seed.basis]
    while frontier:
        fresh = []
        for v in frontier:
            for r in action:
                w = r.apply(v)
                if span.insert(w):
                    fresh.append(list(w))
        frontier = fresh
    return span.to_subspace()


def quotient_algebra(algebra: AlgebraPresentation,
                     ideal: Subspace) -> tuple[AlgebraPresentation, Matrix]:
    """The quotient presentation on the complement coordinates of the
    ideal, together with the projection matrix."""
    if not is_ideal(algebra, ideal):
        raise ValidationError("quotient requires an ideal")
    if ideal.dim == 0:
        return algebra, Matrix.identity(algebra.field, algebra.dim)
    F = algebra.field
    n = algebra.dim
    free = ideal.complement_positions()
    q = len(free)
    proj_cols = []
    for j in range(n):
        rem = ideal.residual(algebra.basis_vector(j))
        proj_cols.append([rem[f] for f in free])
    projection = Matrix(F, q, n, tuple(tuple(col[r] for col in proj_cols) for r in range(q)))

    def lift(r: int) -> tuple:
        return algebra.basis_vector(free[r])

    new_ops = []
    for op in algebra.ops:
        entries = {}
        for idx in product(range(q), repeat=op.arity):
            image = algebra.apply(op, [lift(r) for r in idx])
            coords = projection.apply(image)
            for k, c in enumerate(coords):
                if c:
                    entries[(k,) + idx] = c
        new_ops.append(MultilinearOp.from_entries(F, op.name, op.arity, q, entries))
    labels = tuple(algebra.labels[f] for f in free) if algebra.labels else None
    quotient = AlgebraPresentation(F, q, tuple(new_ops), labels)
    parent_ops = build_operator_algebras(algebra)
    child_ops = build_operator_algebras(quotient)
    if child_ops.multiplication_algebra.dim > parent_ops.multiplication_algebra.dim:
        raise TheoremContradictionError(
            "multiplication algebra grew under a quotient",
            {"parent_dim": parent_ops.multiplication_algebra.dim,
             "child_dim": child_ops.multiplication_algebra.dim})
    return quotient, projection


def induced_operator_image(projection: Matrix, section: Matrix, operators) -> list[Matrix]:
    """Push operators that preserve the kernel of the projection down to
    the quotient: X maps to P X S."""
    return [projection @ x @ section for x in operators]


def section_matrix(algebra: AlgebraPresentation, ideal: Subspace) -> Matrix:
    """The coordinate lift sending quotient basis vector r to the free
    ambient coordinate it came from."""
    free = ideal.complement_positions()
    F = algebra.field
    n = algebra.dim
    z, o = F.zero, F.one
    return Matrix(F, n, len(free),
                  tuple(tuple(o if free[r] == i else z for r in range(len(free)))
                        for i in range(n)))


def direct_sum(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """Block-diagonal sum: matching named operations act blockwise and
    every mixed-block slot evaluates to zero."""
    if a.field != b.field:
        raise ValidationError("direct summands must share a field")
    names_a = {op.name: op for op in a.ops}
    names_b = {op.name: op for op in b.ops}
    if set(names_a) != set(names_b):
        raise ValidationError("direct summands carry different operation names")
    n = a.dim + b.dim
    F = a.field
    new_ops = []
    for op in a.ops:
        other = names_b[op.name]
        if other.arity != op.arity:
            raise ValidationError(
                f"operation {op.name!r} has mismatched arities {op.arity} and {other.arity}")
        entries = {}
        for k, idx, c in op.entries:
            entries[(k,) + idx] = c
        for k, idx, c in other.entries:
            entries[(k + a.dim,) + tuple(i + a.dim for i in idx)] = c
        new_ops.append(MultilinearOp.from_entries(F, op.name, op.arity, n, entries))
    labels = None
    if a.labels and b.labels:
        labels = a.labels + b.labels
    return AlgebraPresentation(F, n, tuple(new_ops), labels)


def is_algebra_automorphism(algebra: AlgebraPresentation, g: Matrix) -> bool:
    """Invertible and commutes with every generating operation."""
    if g.rows != algebra.dim or g.cols != algebra.dim:
        raise ValidationError("automorphism candidate has the wrong shape")
    if g.inverse() is None:
        return False
    basis_vecs = [algebra.basis_vector(i) for i in range(algebra.dim)]
    for op in algebra.ops:
        for args in product(range(algebra.dim), repeat=op.arity):
            lhs = g.apply(algebra.apply(op, [basis_vecs[i] for i in args]))
            rhs = algebra.apply(op, [g.apply(basis_vecs[i]) for i in args])
            if lhs != rhs:
                return False
    return True
