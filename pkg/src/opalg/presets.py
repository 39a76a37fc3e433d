"""Deterministic builders for the example corpus used by tests and the
CLI.

Every preset is addressable by a fixed name string; algebra presets take
the field as a parameter (the CLI appends ``@F5``-style suffixes), action
presets fix their group and twist. Structure tensors are emitted exactly
as documented on each builder.
"""

from __future__ import annotations

from .algebra import AlgebraPresentation, MultilinearOp
from .equivariant import GroupAction, build_induced_algebra
from .errors import ValidationError
from .fields import QQ, Field
from .groups import FiniteGroup, cyclic_group, klein_four_group, symmetric_group
from .linalg import Matrix


def pointwise(n: int, field: Field = QQ) -> AlgebraPresentation:
    """n copies of the base field with coordinatewise product:
    e_i e_j = [i == j] e_i."""
    if n < 0:
        raise ValidationError("pointwise preset needs n >= 0")
    entries = {(i, i, i): 1 for i in range(n)}
    op = MultilinearOp.from_entries(field, "product", 2, n, entries)
    return AlgebraPresentation(field, n, (op,), tuple(f"e{i + 1}" for i in range(n)))


def matrix_algebra(n: int, field: Field = QQ) -> AlgebraPresentation:
    """Full n x n matrix algebra on the unit-matrix basis (row-major):
    E_ij E_kl = [j == k] E_il."""
    if n < 1:
        raise ValidationError("matrix preset needs n >= 1")
    entries = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                entries[(i * n + l, i * n + j, j * n + l)] = 1
    op = MultilinearOp.from_entries(field, "product", 2, n * n, entries)
    labels = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return AlgebraPresentation(field, n * n, (op,), labels)


def dual_numbers(field: Field = QQ) -> AlgebraPresentation:
    """The algebra on basis {1, x} with x^2 = 0."""
    entries = {(0, 0, 0): 1, (1, 0, 1): 1, (1, 1, 0): 1}
    op = MultilinearOp.from_entries(field, "product", 2, 2, entries)
    return AlgebraPresentation(field, 2, (op,), ("1", "x"))


def sl2(field: Field = QQ) -> AlgebraPresentation:
    """Traceless 2x2 matrices on basis (e, h, f) with [h,e] = 2e,
    [h,f] = -2f, [e,f] = h; requires characteristic other than 2."""
    if field.characteristic == 2:
        raise ValidationError("sl2 requires characteristic other than 2")
    entries = {
        (0, 1, 0): 2, (0, 0, 1): -2,
        (2, 1, 2): -2, (2, 2, 1): 2,
        (1, 0, 2): 1, (1, 2, 0): -1,
    }
    coerced = {k: field.from_int(v) for k, v in entries.items()}
    op = MultilinearOp.from_entries(field, "bracket", 2, 3, coerced)
    return AlgebraPresentation(field, 3, (op,), ("e", "h", "f"))


def abelian_lie(n: int, field: Field = QQ) -> AlgebraPresentation:
    """n-dimensional space with the zero bracket."""
    op = MultilinearOp.from_entries(field, "bracket", 2, n, {})
    return AlgebraPresentation(field, n, (op,), tuple(f"x{i + 1}" for i in range(n)))


def nilpotent_chain(n: int, field: Field = QQ) -> AlgebraPresentation:
    """Basis e_1..e_n with e_i e_j = e_{i+j} truncated past n."""
    if n < 1:
        raise ValidationError("nilpotent chain needs n >= 1")
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i + j <= n:
                entries[(i + j - 1, i - 1, j - 1)] = 1
    op = MultilinearOp.from_entries(field, "product", 2, n, entries)
    return AlgebraPresentation(field, n, (op,), tuple(f"e{i}" for i in range(1, n + 1)))


def group_algebra(group: FiniteGroup, field: Field = QQ) -> AlgebraPresentation:
    """Basis indexed by group elements with e_g e_h = e_{gh}."""
    n = group.order
    entries = {}
    for i in range(n):
        for j in range(n):
            entries[(group.mult[i][j], i, j)] = 1
    op = MultilinearOp.from_entries(field, "product", 2, n, entries)
    return AlgebraPresentation(field, n, (op,), tuple(f"g{i}" for i in range(n)))


def standard_group(name: str) -> FiniteGroup:
    """Groups addressable by name: cyclic{n}, symmetric{n<=4}, klein_four."""
    if name.startswith("cyclic"):
        return cyclic_group(int(name[len("cyclic"):]))
    if name.startswith("symmetric"):
        return symmetric_group(int(name[len("symmetric"):]))
    if name == "klein_four":
        return klein_four_group()
    raise ValidationError(f"unknown group name {name!r}")


def _swap_matrix(field: Field) -> Matrix:
    z, o = field.zero, field.one
    return Matrix(field, 2, 2, ((z, o), (o, z)))


def _conjugation_by_swap(field: Field) -> Matrix:
    """Conjugation of 2x2 matrices by the permutation matrix [[0,1],[1,0]]
    on the unit-matrix basis E11, E12, E21, E22."""
    z, o = field.zero, field.one
    return Matrix(field, 4, 4, (
        (z, z, z, o),
        (z, z, o, z),
        (z, o, z, z),
        (o, z, z, z),
    ))


def _trivial_twist(group: FiniteGroup, subgroup, base: AlgebraPresentation):
    ident = Matrix.identity(base.field, base.dim)
    return {h: ident for h in subgroup}


def _order_two_twist(group: FiniteGroup, subgroup, base, involution: Matrix):
    """Twist through an index-2 quotient of the subgroup: elements whose
    square-root parity is odd act by the involution."""
    twist = {}
    ident = Matrix.identity(base.field, base.dim)
    # assign by the unique homomorphism onto {1, -1} with the generator of
    # smallest positive index mapping to the involution
    gen = next(h for h in subgroup if h != group.identity)
    # order of gen inside the subgroup
    seen = {group.identity: 0}
    cur = gen
    k = 1
    while cur not in seen:
        seen[cur] = k
        cur = group.mult[cur][gen]
        k += 1
    for h in subgroup:
        if h not in seen:
            raise ValidationError("order-two twist requires a cyclic subgroup")
        twist[h] = involution if seen[h] % 2 else ident
    return twist


def _induced_preset(group_name: str, subgroup, base_builder, twist_builder):
    def build(field: Field):
        group = standard_group(group_name)
        base = base_builder(field)
        twist = twist_builder(group, tuple(sorted(subgroup)), base)
        return build_induced_algebra(group, tuple(sorted(subgroup)), base, twist)

    return build


def _rotation_action_c3(field: Field):
    """C3 acting irreducibly on the plane with the zero bracket."""
    algebra = abelian_lie(2, field)
    group = cyclic_group(3)
    o = field.one
    z = field.zero
    m = Matrix(field, 2, 2, ((z, field.neg(o)), (o, field.neg(o))))
    mats = [Matrix.identity(field, 2), m, m @ m]
    return algebra, GroupAction(algebra, group, tuple(mats))


def _rotation_action_c4(field: Field):
    """C4 acting by quarter turns on the plane with the zero bracket."""
    algebra = abelian_lie(2, field)
    group = cyclic_group(4)
    o, z = field.one, field.zero
    m = Matrix(field, 2, 2, ((z, field.neg(o)), (o, z)))
    mats = [Matrix.identity(field, 2), m, m @ m, m @ m @ m]
    return algebra, GroupAction(algebra, group, tuple(mats))


def _s4_element(perm: tuple[int, ...]) -> int:
    from itertools import permutations
    return list(permutations(range(4))).index(perm)


ALGEBRA_PRESETS = {
    "pointwise1": lambda f: pointwise(1, f),
    "pointwise2": lambda f: pointwise(2, f),
    "pointwise3": lambda f: pointwise(3, f),
    "pointwise4": lambda f: pointwise(4, f),
    "matrix2": lambda f: matrix_algebra(2, f),
    "matrix3": lambda f: matrix_algebra(3, f),
    "dual_numbers": dual_numbers,
    "sl2": sl2,
    "abelian_lie2": lambda f: abelian_lie(2, f),
    "abelian_lie3": lambda f: abelian_lie(3, f),
    "nilpotent_chain2": lambda f: nilpotent_chain(2, f),
    "nilpotent_chain3": lambda f: nilpotent_chain(3, f),
    "group_algebra_c2": lambda f: group_algebra(cyclic_group(2), f),
    "group_algebra_c3": lambda f: group_algebra(cyclic_group(3), f),
    "group_algebra_s3": lambda f: group_algebra(symmetric_group(3), f),
    "group_algebra_v4": lambda f: group_algebra(klein_four_group(), f),
}

ACTION_PRESETS = {
    # induced function algebras: (group, subgroup, base, twist)
    "fun_c2_e_point1_trivial": _induced_preset(
        "cyclic2", (0,), lambda f: pointwise(1, f), _trivial_twist),
    "fun_c3_e_point1_trivial": _induced_preset(
        "cyclic3", (0,), lambda f: pointwise(1, f), _trivial_twist),
    "fun_c4_c2_point1_trivial": _induced_preset(
        "cyclic4", (0, 2), lambda f: pointwise(1, f), _trivial_twist),
    "fun_s3_s2_point1_trivial": _induced_preset(
        "symmetric3", (0, 1), lambda f: pointwise(1, f), _trivial_twist),
    "fun_s4_s3_point1_trivial": _induced_preset(
        "symmetric4",
        tuple(sorted(_s4_element(p) for p in
                     ((0, 1, 2, 3), (0, 2, 1, 3), (1, 0, 2, 3),
                      (1, 2, 0, 3), (2, 0, 1, 3), (2, 1, 0, 3)))),
        lambda f: pointwise(1, f), _trivial_twist),
    "fun_v4_a_point1_trivial": _induced_preset(
        "klein_four", (0, 1), lambda f: pointwise(1, f), _trivial_twist),
    "fun_s3_c3_point1_trivial": _induced_preset(
        "symmetric3", (0, 3, 4), lambda f: pointwise(1, f), _trivial_twist),
    "fun_c2_e_matrix2_trivial": _induced_preset(
        "cyclic2", (0,), lambda f: matrix_algebra(2, f), _trivial_twist),
    "fun_c2_c2_matrix2_conj": _induced_preset(
        "cyclic2", (0, 1), lambda f: matrix_algebra(2, f),
        lambda g, h, b: _order_two_twist(g, h, b, _conjugation_by_swap(b.field))),
    "fun_c2_c2_point2_swap": _induced_preset(
        "cyclic2", (0, 1), lambda f: pointwise(2, f),
        lambda g, h, b: _order_two_twist(g, h, b, _swap_matrix(b.field))),
    "fun_c4_c4_point2_swap": _induced_preset(
        "cyclic4", (0, 1, 2, 3), lambda f: pointwise(2, f),
        lambda g, h, b: _order_two_twist(g, h, b, _swap_matrix(b.field))),
    # zero-bracket counterexamples with irreducible actions
    "abelian_lie2_c3rot": _rotation_action_c3,
    "abelian_lie2_c4rot": _rotation_action_c4,
}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(ALGEBRA_PRESETS)) + tuple(sorted(ACTION_PRESETS))


def build_preset(name: str, field: Field = QQ):
    """Build a preset by name. Returns a presentation for plain algebra
    presets and an (algebra, action) pair for action presets."""
    if name in ALGEBRA_PRESETS:
        return ALGEBRA_PRESETS[name](field)
    if name in ACTION_PRESETS:
        return ACTION_PRESETS[name](field)
    raise ValidationError(f"unknown preset {name!r}")
