"""Group gradings, the universal grading, invertibles and component types."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import AxiomReport, FusionRing, Violation, multiply, subring_generated, support
from .errors import StructuralError
from .fpdim import Dim, fp_dim_ring, fp_dims
from .groups import FiniteGroup, trivial_group

__all__ = [
    'Grading', 'ComponentType', 'PointedPart',
    'validate_grading', 'trivial_grading', 'adjoint_indices', 'universal_grading', 'factors_through',
    'invertible_objects', 'pointed_part', 'component_type', 'ring_type', 'check_component_dims',
]


@dataclass(frozen=True)
class Grading:
    group: FiniteGroup
    deg: tuple[int, ...]

    def component(self, g: int) -> list[int]:
        if not 0 <= g < self.group.order:
            raise StructuralError(f'group element {g} out of range [0, {self.group.order})')
        return [i for i, d in enumerate(self.deg) if d == g]

    def trivial_component(self) -> list[int]:
        return self.component(self.group.identity)

    def components(self) -> dict[int, list[int]]:
        return {g: self.component(g) for g in range(self.group.order)}


def trivial_grading(ring: FusionRing) -> Grading:
    return Grading(trivial_group(), (0,) * ring.rank)


def validate_grading(ring: FusionRing, grading: Grading) -> AxiomReport:
    """Unit in degree e, duals invert degrees, products add degrees, faithfulness."""
    G, deg = grading.group, grading.deg
    if len(deg) != ring.rank:
        raise StructuralError(f'grading assigns {len(deg)} degrees to a rank-{ring.rank} ring')
    if any(not 0 <= d < G.order for d in deg):
        raise StructuralError(f'degrees must lie in [0, {G.order})')
    out: list[Violation] = []
    if deg[ring.unit] != G.identity:
        out.append(Violation('unit_degree', (ring.unit,), deg[ring.unit], G.identity))
    for i in range(ring.rank):
        if deg[ring.dual[i]] != G.inverse[deg[i]]:
            out.append(Violation('dual_degree', (i, ring.dual[i]), deg[ring.dual[i]], G.inverse[deg[i]]))
    hit = set(deg)
    for g in range(G.order):
        if g not in hit:
            out.append(Violation('faithful', (g,), 0, 1))
    for i, j, t in zip(*np.nonzero(ring.N)):
        want = G.mul(deg[i], deg[j])
        if deg[t] != want:
            out.append(Violation('compatibility', (int(i), int(j), int(t)), deg[t], want))
    return AxiomReport(tuple(out))


def adjoint_indices(ring: FusionRing) -> set[int]:
    """Subring generated by all summands of ``X_i X_i*``."""
    seeds = set()
    for i in range(ring.rank):
        seeds.update(support(multiply(ring, i, ring.dual[i])))
    return subring_generated(ring, seeds)


def universal_grading(ring: FusionRing) -> Grading:
    """Finest faithful grading: components are the orbits of the adjoint subring."""
    adj = sorted(adjoint_indices(ring))
    parent = list(range(ring.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in adj:
        for i in range(ring.rank):
            for t in np.flatnonzero(ring.N[a, i]):
                parent[find(int(t))] = find(i)
    roots = {}
    for i in range(ring.rank):
        roots.setdefault(find(i), len(roots))
    cls = [roots[find(i)] for i in range(ring.rank)]
    n = len(roots)
    table = [[None] * n for _ in range(n)]
    for i, j, t in zip(*np.nonzero(ring.N)):
        a, b, c = cls[i], cls[j], cls[t]
        if table[a][b] is None:
            table[a][b] = c
        elif table[a][b] != c:
            raise StructuralError(f'adjoint classes {a} and {b} multiply into several classes; invalid ring')
    if any(x is None for row in table for x in row):
        raise StructuralError('adjoint classes do not multiply to a total table; invalid ring')
    try:
        group = FiniteGroup.from_table(table, identity=cls[ring.unit])
    except StructuralError as exc:
        raise StructuralError(f'adjoint classes do not form a group: {exc}') from None
    grading = Grading(group, tuple(cls))
    report = validate_grading(ring, grading)
    if not report.passed:
        raise StructuralError(f'universal grading failed validation: {report.violations[0]}')
    return grading


def factors_through(ring: FusionRing, universal: Grading, other: Grading) -> bool:
    """Whether ``other`` is the image of ``universal`` under a group homomorphism."""
    phi: dict[int, int] = {}
    for i in range(ring.rank):
        u, o = universal.deg[i], other.deg[i]
        if phi.setdefault(u, o) != o:
            return False
    U, G = universal.group, other.group
    return all(phi[U.mul(a, b)] == G.mul(phi[a], phi[b]) for a in phi for b in phi)


def invertible_objects(ring: FusionRing) -> set[int]:
    """Exact test: ``X_i X_i*`` is the unit."""
    out = set()
    for i in range(ring.rank):
        prod = multiply(ring, i, ring.dual[i])
        if prod[ring.unit] == 1 and prod.sum() == 1:
            out.add(i)
    return out


@dataclass(frozen=True)
class PointedPart:
    """Invertible basis elements; group element ``k`` is basis index ``indices[k]``."""
    indices: tuple[int, ...]
    group: FiniteGroup

    def __len__(self):
        return len(self.indices)


def pointed_part(ring: FusionRing) -> PointedPart:
    members = sorted(invertible_objects(ring))
    pos = {x: k for k, x in enumerate(members)}
    table = []
    for a in members:
        row = []
        for b in members:
            t = support(multiply(ring, a, b))
            if len(t) != 1 or t[0] not in pos:
                raise StructuralError(f'product of invertibles {a} and {b} is not invertible; invalid ring')
            row.append(pos[t[0]])
        table.append(row)
    return PointedPart(tuple(members), FiniteGroup.from_table(table, identity=pos[ring.unit]))


@dataclass(frozen=True)
class ComponentType:
    """Dimensions with multiplicities, ``((d_0, n_0), ..., (d_s, n_s))``, increasing."""
    entries: tuple[tuple[Dim, int], ...]

    @classmethod
    def from_dims(cls, dims: Sequence[Dim]) -> ComponentType:
        groups: list[list] = []
        for d in sorted(dims, key=lambda x: x.value):
            if groups and groups[-1][0].overlaps(d):
                groups[-1][1] += 1
            else:
                groups.append([d, 1])
        return cls(tuple((d, n) for d, n in groups))

    def matches(self, other: ComponentType) -> bool:
        return len(self.entries) == len(other.entries) and all(
            n1 == n2 and d1.overlaps(d2) for (d1, n1), (d2, n2) in zip(self.entries, other.entries))

    def __str__(self):
        return '(' + '; '.join(f'{d},{n}' for d, n in self.entries) + ')'


def component_type(ring: FusionRing, grading: Grading, g: int) -> ComponentType:
    dims = fp_dims(ring)
    return ComponentType.from_dims([dims[i] for i in grading.component(g)])


def ring_type(ring: FusionRing) -> ComponentType:
    return ComponentType.from_dims(list(fp_dims(ring)))


def check_component_dims(ring: FusionRing, grading: Grading) -> AxiomReport:
    """All components have the FP dimension of the trivial one; total is |G| times it."""
    G = grading.group
    sums = {g: fp_dim_ring(ring, grading.component(g)) for g in range(G.order)}
    base = sums[G.identity]
    out = []
    for g, s in sums.items():
        if not s.overlaps(base):
            out.append(Violation('component_dim', (g,), s.value, base.value))
    total = fp_dim_ring(ring)
    if not total.overlaps(base * G.order):
        out.append(Violation('total_dim', (G.order,), total.value, (base * G.order).value))
    return AxiomReport(tuple(out))
