"""Group actions on presented algebras and the classification of simple
equivariant algebras as induced function algebras.

A group acts through one matrix per element; validation checks the
homomorphism property and that every matrix commutes with every
generating operation. An algebra with an action is simple equivariant
when the multiplication algebra is nonzero and no proper nonzero
invariant ideal exists. Such an algebra is semisimple as a plain algebra
with the group permuting its minimal ideals transitively, so it is
isomorphic to the algebra of twisted functions on the group: pick one
minimal ideal B, let H be its stabilizer acting on B through the
restriction, and send a to the function g -> (projection onto B)(g*a).
`classify_simple_equivariant` constructs that isomorphism explicitly and
verifies it is invertible, intertwines the two actions, and preserves
every generating operation; a failure of any of those checks is an
internal certificate error, never a user error.

Conventions (fixed once, used consistently everywhere): functions satisfy
f(hx) = twist(h) f(x) for h in the subgroup, the group acts by
(g.f)(x) = f(xg), and coset representatives are the smallest element of
each right coset in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import (AlgebraPresentation, MultilinearOp, build_operator_algebras,
                      direct_sum, is_algebra_automorphism, is_ideal)
from .errors import TheoremContradictionError, ValidationError
from .fields import Field
from .groups import FiniteGroup, same_subgroup_up_to_conjugacy
from .linalg import Matrix, SpanBuilder, Subspace
from .structure import minimal_ideal_decomposition, radical


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a presented algebra by automorphisms."""

    algebra: AlgebraPresentation
    group: FiniteGroup
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.group.order:
            raise ValidationError("one matrix per group element is required")
        n = self.algebra.dim
        for m in self.matrices:
            if m.rows != n or m.cols != n or m.field != self.algebra.field:
                raise ValidationError("action matrix shape or field mismatch")
        if not self.matrices[self.group.identity].is_identity():
            raise ValidationError("identity element must act as the identity matrix")
        for a in range(self.group.order):
            for b in range(self.group.order):
                if self.matrices[a] @ self.matrices[b] != self.matrices[self.group.mult[a][b]]:
                    raise ValidationError("action matrices do not respect the group law")
        for g, m in enumerate(self.matrices):
            if not is_algebra_automorphism(self.algebra, m):
                raise ValidationError(f"element {g} does not act by an algebra automorphism")

    def image_of(self, g: int, subspace: Subspace) -> Subspace:
        mat = self.matrices[g]
        return Subspace.from_vectors(self.algebra.field, self.algebra.dim,
                                     [mat.apply(v) for v in subspace.basis])


def is_invariant_ideal(algebra: AlgebraPresentation, action: GroupAction,
                       candidate: Subspace) -> bool:
    """Whether an ideal is carried to itself by every group element."""
    if not is_ideal(algebra, candidate):
        raise ValidationError("invariance test requires an ideal")
    return all(action.image_of(g, candidate) == candidate
               for g in range(action.group.order))


def orbit_on_minimal_ideals(algebra: AlgebraPresentation, action: GroupAction
                            ) -> tuple[tuple[tuple[int, ...], ...], bool]:
    """For each group element, the permutation it induces on the minimal
    ideals of a semisimple algebra, plus a transitivity flag."""
    dec = minimal_ideal_decomposition(algebra)
    return _orbit_from_decomposition(dec, action)


def _orbit_from_decomposition(dec, action: GroupAction):
    parts = [sub for sub, _ in dec.summands]
    perms = []
    for g in range(action.group.order):
        images = []
        for i, part in enumerate(parts):
            image = action.image_of(g, part)
            target = next((j for j, q in enumerate(parts) if q == image), None)
            if target is None:
                raise ValidationError(
                    f"element {g} maps summand {i} to a subspace that is not a summand")
            images.append(target)
        if sorted(images) != list(range(len(parts))):
            raise ValidationError(f"element {g} does not permute the summands")
        perms.append(tuple(images))
    if not parts:
        return tuple(perms), False
    orbit = {perm[0] for perm in perms}
    return tuple(perms), len(orbit) == len(parts)


def is_simple_equivariant(algebra: AlgebraPresentation, action: GroupAction) -> bool:
    """Nonzero multiplication algebra and no proper nonzero invariant
    ideal.

    The radical is an invariant ideal, so a nonzero proper radical
    settles the question; otherwise the invariant ideals are exactly the
    sums of orbits of minimal ideals and the test reduces to transitivity.
    """
    ops = build_operator_algebras(algebra)
    if ops.multiplication_algebra.dim == 0:
        return False
    rad = radical(algebra).radical
    if rad.dim == algebra.dim:
        # radical everything with nonzero products: the module radical is a
        # proper nonzero invariant ideal
        return False
    if rad.dim > 0:
        return False
    _, transitive = orbit_on_minimal_ideals(algebra, action)
    return transitive


def decompose_automorphism(base: AlgebraPresentation, copies: int, g: Matrix
                           ) -> tuple[tuple[int, ...], tuple[Matrix, ...]]:
    """Split an automorphism of the n-fold direct sum of a simple algebra
    into a block permutation and one automorphism of the base per block;
    the recomposition is checked to reproduce the input exactly."""
    if copies < 1:
        raise ValidationError("at least one copy is required")
    total = base
    for _ in range(copies - 1):
        total = direct_sum(total, base)
    if not is_algebra_automorphism(total, g):
        raise ValidationError("the map is not an automorphism of the block sum")
    d = base.dim
    n = total.dim
    perm: list[int] = []
    blocks: list[Matrix] = []
    for i in range(copies):
        support = set()
        for col in range(i * d, (i + 1) * d):
            for row in range(n):
                if g.entries[row][col]:
                    support.add(row // d)
        if len(support) != 1:
            raise ValidationError(
                f"block {i} is not mapped into a single block (hit {sorted(support)})")
        j = support.pop()
        perm.append(j)
        block = Matrix(base.field, d, d, tuple(
            tuple(g.entries[j * d + r][i * d + c] for c in range(d)) for r in range(d)))
        if not is_algebra_automorphism(base, block):
            raise ValidationError(f"restriction to block {i} is not a base automorphism")
        blocks.append(block)
    if sorted(perm) != list(range(copies)):
        raise ValidationError("block images do not form a permutation")
    F = base.field
    grid = [[F.zero] * n for _ in range(n)]
    for i, (j, block) in enumerate(zip(perm, blocks)):
        for r in range(d):
            for c in range(d):
                grid[j * d + r][i * d + c] = block.entries[r][c]
    recomposed = Matrix(F, n, n, tuple(tuple(row) for row in grid))
    if recomposed != g:
        raise TheoremContradictionError("block decomposition does not recompose")
    return tuple(perm), tuple(blocks)


def _check_twist(base: AlgebraPresentation, group: FiniteGroup, subgroup,
                 twist: dict[int, Matrix]) -> None:
    if set(twist) != set(subgroup):
        raise ValidationError("twist must be defined exactly on the subgroup")
    if not group.is_subgroup(subgroup):
        raise ValidationError("twist domain is not a subgroup")
    for h, m in twist.items():
        if not is_algebra_automorphism(base, m):
            raise ValidationError(f"twist of element {h} is not an automorphism")
    for a in subgroup:
        for b in subgroup:
            if twist[a] @ twist[b] != twist[group.mult[a][b]]:
                raise ValidationError("twist is not a homomorphism")


def build_induced_algebra(group: FiniteGroup, subgroup, base: AlgebraPresentation,
                          twist: dict[int, Matrix]
                          ) -> tuple[AlgebraPresentation, GroupAction]:
    """The algebra of twisted functions on the group: values in the base
    algebra, f(hx) = twist(h) f(x), with the group acting by right
    translation (g.f)(x) = f(xg) and all operations acting pointwise.

    The basis is indexed by (coset representative, base basis vector); the
    operations are block-diagonal with one base block per coset.
    """
    subgroup = tuple(sorted(set(subgroup)))
    _check_twist(base, group, subgroup, twist)
    F = base.field
    d = base.dim
    reps = group.coset_representatives(subgroup)
    coset_of = {}
    for ci, rep in enumerate(reps):
        for h in subgroup:
            coset_of[group.mult[h][rep]] = ci
    n = len(reps) * d

    new_ops = []
    for op in base.ops:
        entries = {}
        for ci in range(len(reps)):
            for k, idx, c in op.entries:
                shifted = tuple(ci * d + i for i in idx)
                entries[(ci * d + k,) + shifted] = c
        new_ops.append(MultilinearOp.from_entries(F, op.name, op.arity, n, entries))
    labels = None
    if base.labels:
        labels = tuple(f"g{rep}:{lab}" for rep in reps for lab in base.labels)
    induced = AlgebraPresentation(F, n, tuple(new_ops), labels)

    matrices = []
    for g in range(group.order):
        grid = [[F.zero] * n for _ in range(n)]
        for cj, rep_j in enumerate(reps):
            moved = group.mult[rep_j][g]
            ci = coset_of[moved]
            h = group.mult[moved][group.inverse[reps[ci]]]
            block = twist[h]
            for r in range(d):
                for c in range(d):
                    v = block.entries[r][c]
                    if v:
                        grid[cj * d + r][ci * d + c] = v
        matrices.append(Matrix(F, n, n, tuple(tuple(row) for row in grid)))
    action = GroupAction(induced, group, tuple(matrices))
    return induced, action


@dataclass(frozen=True)
class ClassificationResult:
    """Output of the classification: the stabilizer subgroup, its twist on
    the base summand, the base presentation, and the verified isomorphism
    onto the induced function algebra (in the chosen coset basis)."""

    group: FiniteGroup
    subgroup: tuple[int, ...]
    twist: tuple[Matrix, ...]            # aligned with the subgroup tuple
    base: AlgebraPresentation
    isomorphism: Matrix                  # algebra onto the induced algebra
    coset_representatives: tuple[int, ...]
    verdicts: dict

    def __post_init__(self):
        if not self.group.is_subgroup(self.subgroup):
            raise ValidationError("classification subgroup is not a subgroup")
        if tuple(sorted(self.subgroup)) != self.subgroup:
            raise ValidationError("classification subgroup must be sorted")

    def twist_map(self) -> dict[int, Matrix]:
        return dict(zip(self.subgroup, self.twist))


def classify_simple_equivariant(algebra: AlgebraPresentation,
                                action: GroupAction) -> ClassificationResult:
    """Recover (subgroup, twist, base) and build the explicit isomorphism
    onto the induced function algebra, verifying invertibility,
    equivariance, and operation preservation. Any verification failure
    aborts with a certificate."""
    if not is_simple_equivariant(algebra, action):
        raise ValidationError("classification requires a simple equivariant algebra")
    group = action.group
    dec = minimal_ideal_decomposition(algebra)
    perms, transitive = _orbit_from_decomposition(dec, action)
    if not transitive:
        raise TheoremContradictionError("simple equivariant algebra with intransitive orbit")
    _assert_conjugate_stabilizers(group, perms, len(dec.summands))
    first = dec.summands[0][0]
    base = dec.summands[0][1]
    subgroup = tuple(g for g in range(group.order) if perms[g][0] == 0)
    twist = []
    for h in subgroup:
        twist.append(_restrict_action(action.matrices[h], first))
    induced, induced_action = build_induced_algebra(
        group, subgroup, base, dict(zip(subgroup, twist)))

    reps = group.coset_representatives(subgroup)
    proj = dec.idempotents[0]
    coord_rows = [proj.entries[p] for p in first.pivots]
    d = base.dim
    n = algebra.dim
    F = algebra.field
    psi_rows = []
    for rep in reps:
        block = Matrix(F, d, n, tuple(coord_rows)) @ action.matrices[rep]
        psi_rows.extend(block.entries)
    psi = Matrix(F, len(psi_rows), n, tuple(psi_rows))

    verdicts = {
        "invertible": psi.rows == n and psi.inverse() is not None,
        "equivariant": all(
            psi @ action.matrices[g] == induced_action.matrices[g] @ psi
            for g in range(group.order)),
        "operation_preserving": _preserves_operations(algebra, induced, psi),
    }
    if not all(verdicts.values()):
        raise TheoremContradictionError(
            "classification isomorphism failed verification",
            {"verdicts": verdicts, "subgroup": list(subgroup),
             "isomorphism": [[str(x) for x in row] for row in psi.entries]})
    return ClassificationResult(
        group=group,
        subgroup=subgroup,
        twist=tuple(twist),
        base=base,
        isomorphism=psi,
        coset_representatives=reps,
        verdicts=verdicts,
    )


def _restrict_action(mat: Matrix, part: Subspace) -> Matrix:
    cols = []
    for b in part.basis:
        coords = part.coords_of(mat.apply(b))
        if coords is None:
            raise TheoremContradictionError("stabilizer element does not preserve the summand")
        cols.append(coords)
    k = part.dim
    return Matrix(mat.field, k, k, tuple(tuple(col[i] for col in cols) for i in range(k)))


def _preserves_operations(source: AlgebraPresentation, target: AlgebraPresentation,
                          psi: Matrix) -> bool:
    """Pushing every generating operation through the map reproduces the
    target tensor: psi(op(e_i...)) equals op_target(psi e_i, ...)."""
    basis_vecs = [source.basis_vector(i) for i in range(source.dim)]
    images = [psi.apply(v) for v in basis_vecs]
    for op in source.ops:
        top = target.op_named(op.name)
        if top.arity != op.arity:
            return False
        for args in product(range(source.dim), repeat=op.arity):
            lhs = psi.apply(source.apply(op, [basis_vecs[i] for i in args]))
            rhs = target.apply(top, [images[i] for i in args])
            if lhs != rhs:
                return False
    return True


def _assert_conjugate_stabilizers(group: FiniteGroup, perms, count: int) -> None:
    """Stabilizers of the different minimal ideals must be conjugate."""
    stabilizers = []
    for i in range(count):
        stabilizers.append(tuple(g for g in range(group.order) if perms[g][i] == i))
    for i in range(1, count):
        if not same_subgroup_up_to_conjugacy(group, stabilizers[0], stabilizers[i]):
            raise TheoremContradictionError(
                "summand stabilizers are not conjugate",
                {"first": list(stabilizers[0]), "other": list(stabilizers[i])})
