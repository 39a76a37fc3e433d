"""Finite groups as validated Cayley tables.

Elements are the indices 0..order-1; the table gives mult[i][j] = i*j.
Construction checks the full group axioms (Latin square, identity,
inverses, associativity), which is affordable at the desk-scale orders
used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import ValidationError


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mult: tuple
    identity: int
    inverse: tuple

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise ValidationError("Cayley table shape does not match the order")
        for row in self.mult:
            if sorted(row) != list(range(n)):
                raise ValidationError("Cayley table row is not a permutation")
        for j in range(n):
            if sorted(self.mult[i][j] for i in range(n)) != list(range(n)):
                raise ValidationError("Cayley table column is not a permutation")
        e = self.identity
        if any(self.mult[e][i] != i or self.mult[i][e] != i for i in range(n)):
            raise ValidationError("identity element does not act as identity")
        for i in range(n):
            if self.mult[i][self.inverse[i]] != e or self.mult[self.inverse[i]][i] != e:
                raise ValidationError("inverse table is wrong")
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                        raise ValidationError("Cayley table is not associative")

    @classmethod
    def from_table(cls, table) -> FiniteGroup:
        mult = tuple(tuple(row) for row in table)
        n = len(mult)
        identity = None
        for e in range(n):
            if all(mult[e][i] == i and mult[i][e] == i for i in range(n)):
                identity = e
                break
        if identity is None:
            raise ValidationError("Cayley table has no identity element")
        inverse = []
        for i in range(n):
            inv = next((j for j in range(n) if mult[i][j] == identity), None)
            if inv is None:
                raise ValidationError(f"element {i} has no inverse")
            inverse.append(inv)
        return cls(n, mult, identity, tuple(inverse))

    def product(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mult[self.mult[g][h]][self.inverse[g]]

    def is_subgroup(self, elements) -> bool:
        elems = set(elements)
        if self.identity not in elems:
            return False
        for a in elems:
            if self.inverse[a] not in elems:
                return False
            for b in elems:
                if self.mult[a][b] not in elems:
                    return False
        return True

    def right_cosets(self, subgroup) -> tuple[tuple[int, ...], ...]:
        """Right cosets Hg partitioning the group, sorted by their
        smallest member; each coset is a sorted tuple."""
        if not self.is_subgroup(subgroup):
            raise ValidationError("right cosets require a subgroup")
        seen = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.mult[h][g] for h in subgroup))
            seen.update(coset)
            cosets.append(coset)
        cosets.sort(key=lambda c: c[0])
        return tuple(cosets)

    def coset_representatives(self, subgroup) -> tuple[int, ...]:
        """Smallest element of each right coset, ascending."""
        return tuple(c[0] for c in self.right_cosets(subgroup))


def same_subgroup_up_to_conjugacy(group: FiniteGroup, first, second) -> bool:
    """Exhaustive search for an element conjugating one subgroup onto the
    other."""
    a, b = set(first), set(second)
    if not group.is_subgroup(a) or not group.is_subgroup(b):
        raise ValidationError("conjugacy test requires subgroups")
    if len(a) != len(b):
        return False
    for g in range(group.order):
        if {group.conjugate(g, h) for h in a} == b:
            return True
    return False


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be positive")
    return FiniteGroup.from_table([[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of n points in lexicographic order, composed so that
    (s*t)(x) = s(t(x)); capped at n = 4 to keep tables small."""
    if not 1 <= n <= 4:
        raise ValidationError("symmetric groups are provided for 1 <= n <= 4")
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for s in perms:
        row = []
        for t in perms:
            row.append(index[tuple(s[t[x]] for x in range(n))])
        table.append(row)
    return FiniteGroup.from_table(table)


def klein_four_group() -> FiniteGroup:
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return FiniteGroup.from_table(table)
