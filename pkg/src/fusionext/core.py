"""Fusion rings at the level of their structure constants.

A fusion ring of rank ``r`` is stored as an integer tensor ``N`` of shape
``(r, r, r)`` with ``X_i * X_j = sum_t N[i, j, t] X_t``, together with the
index of the unit and the duality involution ``i -> i*``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import StructuralError

__all__ = [
    'FusionRing', 'Violation', 'AxiomReport',
    'validate_ring', 'basis_vector', 'as_vector', 'multiply', 'support', 'simple_index',
    'is_commutative', 'subring_generated', 'restrict', 'relabel', 'tensor_product',
    'ring_from_rules',
]

# associativity sums are formed in int64; refuse tensors that could wrap around
_INT64_LIMIT = 2 ** 62


@dataclass(frozen=True, eq=False)
class FusionRing:
    """A based ring with nonnegative integer structure constants.

    Construction only checks shapes and ranges; use :func:`validate_ring`
    for the ring axioms.
    """
    N: np.ndarray
    dual: tuple[int, ...]
    unit: int = 0
    name: str = ''
    rank: int = field(init=False)

    def __post_init__(self):
        N = np.asarray(self.N)
        if N.ndim != 3 or len(set(N.shape)) != 1 or N.shape[0] == 0:
            raise StructuralError(f'structure constants must be an r x r x r tensor, got shape {N.shape}')
        if N.dtype.kind not in 'iub':
            if N.dtype == object or N.dtype.kind == 'f':
                if not all(float(x).is_integer() for x in N.flat):
                    raise StructuralError('structure constants must be integers')
            else:
                raise StructuralError(f'structure constants must be integers, got dtype {N.dtype}')
        if N.size and (N.min() < 0):
            raise StructuralError('structure constants must be nonnegative')
        rank = N.shape[0]
        if N.size and int(N.max()) ** 2 * rank >= _INT64_LIMIT:
            raise StructuralError('structure constants too large: associativity sums would overflow int64')
        N = np.array(N, dtype=np.int64)
        N.setflags(write=False)
        dual = tuple(int(d) for d in self.dual)
        if len(dual) != rank:
            raise StructuralError(f'dual has length {len(dual)}, expected rank {rank}')
        if any(not 0 <= d < rank for d in dual):
            raise StructuralError(f'dual entries out of range [0, {rank})')
        if not 0 <= int(self.unit) < rank:
            raise StructuralError(f'unit index {self.unit} out of range [0, {rank})')
        object.__setattr__(self, 'N', N)
        object.__setattr__(self, 'dual', dual)
        object.__setattr__(self, 'unit', int(self.unit))
        object.__setattr__(self, 'rank', rank)

    def key(self) -> tuple:
        return (self.unit, self.dual, tuple(self.N.flat))

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f' {self.name!r}' if self.name else ''
        return f'<FusionRing{label} rank={self.rank} unit={self.unit} dual={self.dual}>'

    def check_index(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < self.rank:
            raise StructuralError(f'basis index {i!r} out of range [0, {self.rank})')
        return int(i)

    @property
    def indices(self) -> range:
        return range(self.rank)


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple
    lhs: int
    rhs: int

    def __str__(self):
        return f'{self.axiom} at {self.indices}: {self.lhs} != {self.rhs}'


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def by_axiom(self, axiom: str) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}


def validate_ring(ring: FusionRing) -> AxiomReport:
    """Check unit, duality, Frobenius reciprocity and associativity.

    Every violation is reported, not just the first one.
    """
    N, r, u, dual = ring.N, ring.rank, ring.unit, ring.dual
    out: list[Violation] = []
    for i in range(r):
        if dual[dual[i]] != i:
            out.append(Violation('dual_involution', (i,), dual[dual[i]], i))
    if dual[u] != u:
        out.append(Violation('dual_unit', (u,), dual[u], u))
    eye = np.eye(r, dtype=np.int64)
    for j, k in zip(*np.nonzero(N[u] != eye)):
        out.append(Violation('left_unit', (u, int(j), int(k)), int(N[u, j, k]), int(eye[j, k])))
    for i, k in zip(*np.nonzero(N[:, u, :] != eye)):
        out.append(Violation('right_unit', (int(i), u, int(k)), int(N[i, u, k]), int(eye[i, k])))
    expected = np.zeros((r, r), dtype=np.int64)
    expected[np.arange(r), list(dual)] = 1
    for i, j in zip(*np.nonzero(N[:, :, u] != expected)):
        out.append(Violation('unit_coefficient', (int(i), int(j), u), int(N[i, j, u]), int(expected[i, j])))
    # N[i][j][k] = N[dual i][k][j] = N[k][dual j][i]
    d = np.array(dual)
    first = N[d][:, :, :].transpose(0, 2, 1)  # first[i, j, k] = N[d[i], k, j]
    second = N[:, d, :].transpose(2, 1, 0)  # second[i, j, k] = N[k, d[j], i]
    for name, other in (('frobenius_left', first), ('frobenius_right', second)):
        for i, j, k in zip(*np.nonzero(N != other)):
            out.append(Violation(name, (int(i), int(j), int(k)), int(N[i, j, k]), int(other[i, j, k])))
    lhs = np.einsum('ijm,mkl->ijkl', N, N)
    rhs = np.einsum('jkm,iml->ijkl', N, N)
    for idx in zip(*np.nonzero(lhs != rhs)):
        idx = tuple(int(x) for x in idx)
        out.append(Violation('associativity', idx, int(lhs[idx]), int(rhs[idx])))
    return AxiomReport(tuple(out))


def basis_vector(ring: FusionRing, i: int) -> np.ndarray:
    v = np.zeros(ring.rank, dtype=np.int64)
    v[ring.check_index(i)] = 1
    return v


def as_vector(ring: FusionRing, a) -> np.ndarray:
    """Coerce a basis index, a ``{index: coefficient}`` mapping or a dense sequence."""
    if isinstance(a, (int, np.integer)):
        return basis_vector(ring, a)
    if isinstance(a, Mapping):
        v = np.zeros(ring.rank, dtype=np.int64)
        for i, c in a.items():
            v[ring.check_index(i)] += int(c)
        a = v
    v = np.asarray(a)
    if v.shape != (ring.rank,):
        raise StructuralError(f'basis vector must have length {ring.rank}, got shape {v.shape}')
    if v.dtype.kind not in 'iub' or (v.size and v.min() < 0):
        raise StructuralError('basis vectors have nonnegative integer coefficients')
    return v.astype(np.int64)


def multiply(ring: FusionRing, a, b) -> np.ndarray:
    """Product of two (non-virtual) elements, bilinear in the basis."""
    va, vb = as_vector(ring, a), as_vector(ring, b)
    return np.einsum('i,j,ijk->k', va, vb, ring.N)


def support(v) -> list[int]:
    return [int(i) for i in np.flatnonzero(np.asarray(v))]


def simple_index(v) -> int | None:
    """Index ``t`` if ``v`` is exactly one basis element with multiplicity 1."""
    v = np.asarray(v)
    nz = np.flatnonzero(v)
    if len(nz) == 1 and v[nz[0]] == 1:
        return int(nz[0])
    return None


def is_commutative(ring: FusionRing) -> bool:
    return bool(np.array_equal(ring.N, ring.N.transpose(1, 0, 2)))


def subring_generated(ring: FusionRing, seeds: Iterable[int]) -> set[int]:
    """Smallest set containing ``seeds`` and the unit, closed under duals and products."""
    closed = {ring.unit} | {ring.check_index(s) for s in seeds}
    while True:
        grown = set(closed)
        grown.update(ring.dual[i] for i in closed)
        members = sorted(grown)
        block = ring.N[np.ix_(members, members)].sum(axis=(0, 1))
        grown.update(int(t) for t in np.flatnonzero(block))
        if grown == closed:
            return closed
        closed = grown


def restrict(ring: FusionRing, indices: Iterable[int], name: str = '') -> FusionRing:
    """Re-indexed ring on a product-closed subset (sorted order, unit kept)."""
    members = sorted(set(indices))
    pos = {old: new for new, old in enumerate(members)}
    if ring.unit not in pos:
        raise StructuralError('restriction must contain the unit')
    if any(ring.dual[i] not in pos for i in members):
        raise StructuralError('restriction is not closed under duality')
    outside = [t for t in range(ring.rank) if t not in pos]
    if outside and ring.N[np.ix_(members, members, outside)].any():
        raise StructuralError('restriction is not closed under products')
    N = ring.N[np.ix_(members, members, members)]
    return FusionRing(N, tuple(pos[ring.dual[i]] for i in members), pos[ring.unit], name or ring.name)


def relabel(ring: FusionRing, perm: Sequence[int]) -> FusionRing:
    """Ring with old basis element ``i`` renamed to ``perm[i]``."""
    perm = list(perm)
    if sorted(perm) != list(range(ring.rank)):
        raise StructuralError(f'{perm} is not a permutation of range({ring.rank})')
    inv = np.argsort(perm)
    N = ring.N[np.ix_(inv, inv, inv)]
    dual = tuple(perm[ring.dual[inv[i]]] for i in range(ring.rank))
    return FusionRing(N, dual, perm[ring.unit], ring.name)


def tensor_product(a: FusionRing, b: FusionRing, name: str = '') -> FusionRing:
    """Ring whose basis is the pairs ``(i, j)``, flattened as ``i * b.rank + j``."""
    N = np.einsum('ikm,jln->ijklmn', a.N, b.N).reshape(a.rank * b.rank, a.rank * b.rank, a.rank * b.rank)
    dual = tuple(a.dual[i] * b.rank + b.dual[j] for i in range(a.rank) for j in range(b.rank))
    return FusionRing(N, dual, a.unit * b.rank + b.unit, name or f'{a.name}x{b.name}')


def ring_from_rules(rank: int, rules: Mapping[tuple[int, int], Mapping[int, int]],
                    unit: int = 0, name: str = '', commutative: bool = True) -> FusionRing:
    """Build a ring from the non-unit products; unit rows and duals are filled in.

    ``rules[(i, j)] = {t: N_ij^t}``. With ``commutative`` the rule for
    ``(j, i)`` is copied from ``(i, j)`` when absent.
    """
    N = np.zeros((rank, rank, rank), dtype=np.int64)
    for k in range(rank):
        N[unit, k, k] = N[k, unit, k] = 1
    for (i, j), prod in rules.items():
        for t, c in prod.items():
            N[i, j, t] = c
            if commutative and (j, i) not in rules:
                N[j, i, t] = c
    dual = []
    for i in range(rank):
        hits = np.flatnonzero(N[i, :, unit])
        if len(hits) != 1:
            raise StructuralError(f'basis element {i} must have exactly one dual, found {list(hits)}')
        dual.append(int(hits[0]))
    return FusionRing(N, tuple(dual), unit, name)
