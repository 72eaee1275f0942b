"""Exhaustive census of small fusion rings.

Rings are built cell by cell. Frobenius reciprocity ties every structure
constant ``N_ij^k`` to ``N_{i* k}^j`` and ``N_{k j*}^i``, so each orbit of
cells is one unknown; associativity is checked on a quadruple as soon as its
last unknown is assigned. Survivors are reduced to a canonical form and
deduplicated.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import FusionRing, validate_ring
from .errors import ConfigurationError, FusionError
from .fpdim import Dim, fp_dims, quantize_subtwo
from .grading import invertible_objects, universal_grading

__all__ = [
    'MAX_RANK', 'MAX_CONSTANT', 'EnumerationSpec',
    'dual_patterns', 'enumerate_fusion_rings', 'canonical_form', 'census_anomalies',
]

MAX_RANK = 6
MAX_CONSTANT = 3


@dataclass(frozen=True)
class EnumerationSpec:
    rank: int
    max_constant: int
    dual_pattern: tuple[int, ...] | None = None
    unsafe: bool = False  # lifts the rank/constant guards

    def __post_init__(self):
        if self.rank < 1 or self.max_constant < 0:
            raise ConfigurationError('rank must be positive and max_constant nonnegative')
        if not self.unsafe and (self.rank > MAX_RANK or self.max_constant > MAX_CONSTANT):
            raise ConfigurationError(f'census limited to rank <= {MAX_RANK} and max_constant <= {MAX_CONSTANT} '
                                     f'(got rank {self.rank}, max {self.max_constant}); pass unsafe=True to override')
        if self.dual_pattern is not None:
            d = tuple(self.dual_pattern)
            if (len(d) != self.rank or d[0] != 0 or sorted(d) != list(range(self.rank))
                    or any(d[d[i]] != i for i in range(self.rank))):
                raise ConfigurationError(f'{d} is not an involution of range({self.rank}) fixing 0')


def dual_patterns(rank: int) -> list[tuple[int, ...]]:
    """One involution per conjugacy class: self-dual elements first, then dual pairs."""
    out = []
    for pairs in range((rank - 1) // 2 + 1):
        selfdual = rank - 1 - 2 * pairs
        d = list(range(selfdual + 1))
        for p in range(pairs):
            a = selfdual + 1 + 2 * p
            d += [a + 1, a]
        out.append(tuple(d))
    return out


class _Search:
    """Backtracking over Frobenius-reciprocity orbits for one duality pattern."""

    def __init__(self, rank: int, dual: tuple[int, ...], max_constant: int):
        self.r, self.dual, self.max = rank, dual, max_constant
        r, d = rank, dual
        N = np.zeros((r, r, r), dtype=np.int64)
        for k in range(r):
            N[0, k, k] = N[k, 0, k] = 1
        for i in range(1, r):
            N[i, d[i], 0] = 1
        self.base = N
        var_of = {}
        self.orbits = []
        for cell in itertools.product(range(1, r), repeat=3):
            if cell in var_of:
                continue
            orbit, todo = {cell}, [cell]
            while todo:
                i, j, k = todo.pop()
                for nxt in ((d[i], k, j), (k, d[j], i)):
                    if nxt not in orbit:
                        orbit.add(nxt)
                        todo.append(nxt)
            for c in orbit:
                var_of[c] = len(self.orbits)
            self.orbits.append(tuple(sorted(orbit)))
        # group associativity quadruples by the last unknown they depend on
        self.checks = [[] for _ in self.orbits]
        self.static = []
        for i, j, k in itertools.product(range(1, r), repeat=3):
            for l in range(r):
                deps = set()
                for m in range(r):
                    for c in ((i, j, m), (m, k, l), (j, k, m), (i, m, l)):
                        if c in var_of:
                            deps.add(var_of[c])
                (self.checks[max(deps)] if deps else self.static).append((i, j, k, l))

    @staticmethod
    def _assoc(N, i, j, k, l) -> bool:
        return int(N[i, j, :] @ N[:, k, l]) == int(N[j, k, :] @ N[i, :, l])

    def run(self, first: int | None = None) -> list[np.ndarray]:
        N = self.base.copy()
        if not all(self._assoc(N, *q) for q in self.static):
            return []
        found = []
        nvars = len(self.orbits)

        def assign(v):
            if v == nvars:
                found.append(N.copy())
                return
            values = range(self.max + 1) if (v > 0 or first is None) else (first,)
            for value in values:
                for c in self.orbits[v]:
                    N[c] = value
                if all(self._assoc(N, *q) for q in self.checks[v]):
                    assign(v + 1)
            for c in self.orbits[v]:
                N[c] = 0

        assign(0)
        return found


def _canonical_key(N: np.ndarray, unit: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    r = N.shape[0]
    others = [i for i in range(r) if i != unit]
    best, best_perm = None, None
    for order in itertools.permutations(others):
        inv = list(order)
        inv.insert(unit, unit)  # inv[new] = old
        key = tuple(N[np.ix_(inv, inv, inv)].flat)
        if best is None or key < best:
            best, best_perm = key, inv
    return best, tuple(best_perm)


def canonical_form(ring: FusionRing) -> FusionRing:
    """Relabeling (unit fixed) with the lexicographically smallest flattened tensor."""
    _, inv = _canonical_key(ring.N, ring.unit)
    N = ring.N[np.ix_(inv, inv, inv)]
    pos = {old: new for new, old in enumerate(inv)}
    dual = tuple(pos[ring.dual[inv[i]]] for i in range(ring.rank))
    return FusionRing(N, dual, ring.unit, ring.name)


def enumerate_fusion_rings(spec: EnumerationSpec, workers: int = 1) -> Iterator[FusionRing]:
    """All fusion rings within ``spec`` up to relabeling, in lexicographic tensor order."""
    r = spec.rank
    if r == 1:
        yield FusionRing(np.ones((1, 1, 1), dtype=np.int64), (0,), 0, 'r1_0')
        return
    patterns = [spec.dual_pattern] if spec.dual_pattern is not None else dual_patterns(r)
    jobs = [(d, v) for d in patterns for v in range(spec.max_constant + 1)]

    def job(arg):
        d, v = arg
        return d, _Search(r, d, spec.max_constant).run(first=v)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, jobs))
    else:
        results = [job(a) for a in jobs]
    seen = {}
    for d, tensors in results:
        for N in tensors:
            key, _ = _canonical_key(N, 0)
            seen.setdefault(key, N)
    for n, key in enumerate(sorted(seen)):
        ring = canonical_form(FusionRing(seen[key], _dual_from(seen[key]), 0))
        ring = FusionRing(ring.N, ring.dual, 0, f'r{r}_{n}')
        report = validate_ring(ring)
        if not report.passed:
            raise FusionError(f'census produced an invalid ring: {report.violations[0]}')
        yield ring


def _dual_from(N: np.ndarray) -> tuple[int, ...]:
    return tuple(int(np.flatnonzero(N[i, :, 0])[0]) for i in range(N.shape[0]))


def census_anomalies(ring: FusionRing, tol: float = 1e-8) -> list[str]:
    """Cross-checks that every fusion ring must pass; an empty list means none failed."""
    out = []
    dims = fp_dims(ring)
    for i, j in itertools.product(range(ring.rank), repeat=2):
        lhs = dims[i] * dims[j]
        rhs = sum((dims[t] * int(c) for t, c in enumerate(ring.N[i, j]) if c), Dim(0.0))
        if abs(lhs.value - rhs.value) > max(tol, lhs.radius + rhs.radius):
            out.append(f'multiplicativity fails at ({i}, {j}): {lhs.value!r} vs {rhs.value!r}')
    inv = invertible_objects(ring)
    for i, d in enumerate(dims):
        if (i in inv) != (abs(d.value - 1) <= max(d.radius, tol)):
            out.append(f'invertibility of {i} disagrees with FPdim {d}')
        if d.value < 2 - tol and quantize_subtwo(d) is None:
            out.append(f'FPdim({i}) = {d} < 2 is not of the form 2cos(pi/n)')
    try:
        universal_grading(ring)
    except FusionError as exc:
        out.append(f'universal grading failed: {exc}')
    return out
