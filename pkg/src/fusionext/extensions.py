"""Similar components, slightly trivial extensions and exact factorizations.

A component ``C_g`` of a graded ring is *similar* to the trivial component
``D`` when it is ``{delta * X_i : X_i in D}`` for one invertible ``delta``
in ``C_g``; this happens exactly when ``C_g`` contains an invertible. An
extension all of whose components are similar is *slightly trivial*.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import FusionRing, is_commutative, multiply, simple_index, subring_generated, support, validate_ring
from .errors import PreconditionError, StructuralError, TheoryViolation
from .groups import FiniteGroup
from .grading import Grading, invertible_objects, validate_grading

__all__ = [
    'SimilarityEntry', 'SimilarityWitness', 'Factorization',
    'is_similar_component', 'is_slightly_trivial', 'nonsimilar_components',
    'synthesize_slightly_trivial', 'factorization_problems', 'check_exact_factorization',
    'factorize_via_pointed',
]


@dataclass(frozen=True)
class SimilarityEntry:
    """``image[i]`` is the index of ``delta * X_i`` for each trivial-component index ``i``."""
    g: int
    delta: int
    image: dict[int, int] = field(hash=False)


@dataclass(frozen=True)
class SimilarityWitness:
    entries: tuple[SimilarityEntry, ...]

    def delta(self, g: int) -> int:
        return self.entries[g].delta

    def labels(self) -> dict[int, tuple[int, int]]:
        """Every basis index as a pair ``(g, i)`` meaning ``delta_g * X_i``."""
        return {t: (e.g, i) for e in self.entries for i, t in e.image.items()}


def is_similar_component(ring: FusionRing, grading: Grading, g: int) -> SimilarityEntry | None:
    comp = grading.component(g)
    base = grading.trivial_component()
    if g == grading.group.identity:
        delta = ring.unit
    else:
        inv = sorted(set(comp) & invertible_objects(ring))
        if not inv:
            return None
        delta = inv[0]
    image = {}
    for i in base:
        t = simple_index(multiply(ring, delta, i))
        if t is None:
            raise StructuralError(f'{delta} * {i} is not simple although {delta} is invertible')
        image[i] = t
    if sorted(image.values()) != comp:
        raise StructuralError(f'delta={delta} times the trivial component does not exhaust component {g}: '
                              f'got {sorted(image.values())}, component is {comp}')
    return SimilarityEntry(g, delta, image)


def nonsimilar_components(ring: FusionRing, grading: Grading) -> list[int]:
    return [g for g in range(grading.group.order) if is_similar_component(ring, grading, g) is None]


def is_slightly_trivial(ring: FusionRing, grading: Grading) -> SimilarityWitness | None:
    entries = []
    for g in range(grading.group.order):
        entry = is_similar_component(ring, grading, g)
        if entry is None:
            return None
        entries.append(entry)
    return SimilarityWitness(tuple(entries))


def synthesize_slightly_trivial(base: FusionRing, group: FiniteGroup,
                                force: bool = False) -> tuple[FusionRing, Grading]:
    """Split extension with basis ``delta_g * X_i`` flattened as ``g * rank + i``.

    ``(delta_g X_i)(delta_h X_j) = sum_t N_ij^t delta_gh X_t``.
    """
    if not force and not is_commutative(base):
        raise PreconditionError('the fusion-rule formula for slightly trivial extensions '
                                'assumes a commutative Grothendieck ring; pass force=True to override')
    r, n = base.rank, group.order
    table = np.zeros((n, n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            table[g, h, group.mul(g, h)] = 1
    N = np.einsum('ghk,ijt->gihjkt', table, base.N).reshape(n * r, n * r, n * r)
    dual = tuple(group.inverse[g] * r + base.dual[i] for g in range(n) for i in range(r))
    name = f'{base.name or "base"}_{group.name or f"G{n}"}'
    ring = FusionRing(N, dual, group.identity * r + base.unit, name)
    grading = Grading(group, tuple(g for g in range(n) for _ in range(r)))
    report = validate_ring(ring)
    if not report.passed:
        raise StructuralError(f'synthesized ring fails the ring axioms: {report.violations[0]}')
    report = validate_grading(ring, grading)
    if not report.passed:
        raise StructuralError(f'synthesized grading is invalid: {report.violations[0]}')
    return ring, grading


@dataclass(frozen=True)
class Factorization:
    left: tuple[int, ...]
    right: tuple[int, ...]
    pairing: dict[int, tuple[int, int]] = field(hash=False)


def _closed(ring: FusionRing, indices: Iterable[int]) -> set[int]:
    members = {ring.check_index(i) for i in indices} | {ring.unit}
    closure = subring_generated(ring, members)
    if closure != members:
        raise PreconditionError(f'{sorted(members)} is not closed under products and duals '
                                f'(generates {sorted(closure)})')
    return members


def factorization_problems(ring: FusionRing, left: Iterable[int],
                           right: Iterable[int]) -> tuple[Factorization | None, list[str]]:
    """Attempt ``C = A * B``; returns the factorization or the reasons it fails."""
    A, B = sorted(_closed(ring, left)), sorted(_closed(ring, right))
    problems = []
    common = sorted(set(A) & set(B))
    if common != [ring.unit]:
        problems.append(f'intersection is {common}, not just the unit')
    pairing: dict[int, tuple[int, int]] = {}
    for a, b in itertools.product(A, B):
        prod = multiply(ring, a, b)
        t = simple_index(prod)
        if t is None:
            problems.append(f'{a} * {b} is not simple: support {support(prod)}')
            continue
        if t in pairing:
            problems.append(f'{t} arises as both {pairing[t][0]} * {pairing[t][1]} and {a} * {b}')
            continue
        pairing[t] = (a, b)
    missed = [t for t in range(ring.rank) if t not in pairing]
    if missed:
        problems.append(f'basis elements {missed} are not products a * b')
    if problems:
        return None, problems
    return Factorization(tuple(A), tuple(B), pairing), []


def check_exact_factorization(ring: FusionRing, left: Iterable[int],
                              right: Iterable[int]) -> Factorization | None:
    return factorization_problems(ring, left, right)[0]


def factorize_via_pointed(ring: FusionRing, grading: Grading) -> Factorization:
    """``C = C_pt * D`` for a slightly trivial extension of a ``D`` with trivial pointed part."""
    failing = nonsimilar_components(ring, grading)
    if failing:
        raise PreconditionError(f'not a slightly trivial extension: components {failing} contain no invertible')
    base = grading.trivial_component()
    base_pointed = sorted(set(base) & invertible_objects(ring))
    if base_pointed != [ring.unit]:
        raise PreconditionError(f'pointed part of the trivial component is {base_pointed}, not trivial')
    fact, problems = factorization_problems(ring, invertible_objects(ring), base)
    if fact is None:
        raise TheoryViolation('expected C = C_pt * D but: ' + '; '.join(problems))
    return fact
