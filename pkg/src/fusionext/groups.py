"""Finite groups given by explicit Cayley tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

from .errors import StructuralError

__all__ = ['FiniteGroup', 'cyclic', 'direct_product', 'trivial_group', 'group_from_name']


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``range(order)``; ``table[g][h]`` is the product ``g*h``.

    Build instances with :meth:`from_table`, which validates the axioms.
    """
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = field(default='', compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], identity: int | None = None,
                   name: str = '') -> FiniteGroup:
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise StructuralError('a group needs at least one element')
        if any(len(row) != n for row in table):
            raise StructuralError(f'Cayley table must be {n} x {n}')
        if any(not 0 <= x < n for row in table for x in row):
            raise StructuralError(f'Cayley table entries must lie in [0, {n})')
        if identity is None:
            candidates = [e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))]
            if not candidates:
                raise StructuralError('Cayley table has no identity element')
            identity = candidates[0]
        if not 0 <= identity < n:
            raise StructuralError(f'identity {identity} out of range')
        for g in range(n):
            if table[identity][g] != g or table[g][identity] != g:
                raise StructuralError(f'{identity} is not a two-sided identity (fails at {g})')
        inverse = []
        for g in range(n):
            hits = [h for h in range(n) if table[g][h] == identity]
            if len(hits) != 1 or table[hits[0]][g] != identity:
                raise StructuralError(f'element {g} has no unique two-sided inverse')
            inverse.append(hits[0])
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise StructuralError(f'Cayley table is not associative at ({a}, {b}, {c})')
        return cls(table, identity, tuple(inverse), name)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def product(self, elements) -> int:
        return reduce(self.mul, elements, self.identity)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def order_profile(self) -> tuple[int, ...]:
        """Sorted element orders; enough to tell apart the small groups used here."""
        return tuple(sorted(self.element_order(g) for g in range(self.order)))

    def __str__(self):
        return self.name or f'group of order {self.order}'


def trivial_group() -> FiniteGroup:
    return FiniteGroup.from_table([[0]], 0, name='1')


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise StructuralError('cyclic group order must be positive')
    return FiniteGroup.from_table([[(a + b) % n for b in range(n)] for a in range(n)], 0, name=f'Z{n}')


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Elements ``(a, b)`` flattened as ``a * h.order + b``."""
    m = h.order

    def mul(x, y):
        (a1, b1), (a2, b2) = divmod(x, m), divmod(y, m)
        return g.mul(a1, a2) * m + h.mul(b1, b2)

    n = g.order * m
    table = [[mul(x, y) for y in range(n)] for x in range(n)]
    name = f'{g.name}x{h.name}' if g.name and h.name else ''
    return FiniteGroup.from_table(table, g.identity * m + h.identity, name=name)


def group_from_name(spec: str) -> FiniteGroup:
    """Parse ``zN`` or products such as ``z2xz2`` / ``z2xz3``."""
    parts = spec.lower().split('x')
    if not parts or any(not (p.startswith('z') and p[1:].isdigit() and int(p[1:]) > 0) for p in parts):
        raise StructuralError(f'unrecognised group name {spec!r}; expected zN or zNxzM...')
    return reduce(direct_product, (cyclic(int(p[1:])) for p in parts))
