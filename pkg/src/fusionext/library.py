"""Named rings. The two base rings of the classification results ship as data files."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import FusionRing, ring_from_rules
from .groups import FiniteGroup
from .ringio import load_ring

__all__ = ['ising', 'a15', 'rank_one', 'fibonacci', 'rep_s3', 'pointed']


@lru_cache(maxsize=None)
def ising() -> FusionRing:
    """Basis ``(1, delta, X)``."""
    return load_ring('ising.ring').ring


@lru_cache(maxsize=None)
def a15() -> FusionRing:
    """Basis ``(1, alpha, beta)``."""
    return load_ring('a15.ring').ring


def rank_one() -> FusionRing:
    return FusionRing(np.ones((1, 1, 1), dtype=np.int64), (0,), 0, 'vec')


def fibonacci() -> FusionRing:
    return ring_from_rules(2, {(1, 1): {0: 1, 1: 1}}, name='fib')


def rep_s3() -> FusionRing:
    """Basis ``(1, sign, V)`` with ``V*V = 1 + sign + V``."""
    return ring_from_rules(3, {(1, 1): {0: 1}, (1, 2): {2: 1}, (2, 2): {0: 1, 1: 1, 2: 1}}, name='rep_s3')


def pointed(group: FiniteGroup) -> FusionRing:
    """Group ring of ``group``; basis index = group element."""
    n = group.order
    N = np.zeros((n, n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            N[g, h, group.mul(g, h)] = 1
    return FusionRing(N, group.inverse, group.identity, f'vec_{group.name}' if group.name else 'pointed')
