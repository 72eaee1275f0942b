"""Frobenius-Perron dimensions with certified error radii.

The dimension of a basis element is the Perron root of its left
multiplication matrix. It is bracketed with the Collatz-Wielandt bounds

    min_k (Mv)_k / v_k  <=  rho(M)  <=  max_k (Mv)_k / v_k      (v > 0)

while power iteration improves ``v``. When the bracket stalls (reducible
matrices with blocks of different spectral radius) the root is isolated
exactly instead, by Sturm-sequence bisection on the integer characteristic
polynomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .core import FusionRing, multiply
from .errors import ComputationError, PrecisionError, PreconditionError

__all__ = [
    'Dim', 'EPS', 'DECISION_MARGIN', 'compare_dims',
    'left_mult_matrix', 'perron_root', 'fp_dim_simple', 'fp_dims', 'fp_dim_ring',
    'quantize_subtwo', 'smallest_dim_index', 'charpoly',
]

EPS = float(np.finfo(float).eps)
TARGET_RADIUS = 1e-12
MAX_RADIUS = 1e-9
DECISION_MARGIN = 1e-6


def _rounding(x: float) -> float:
    return 2 * EPS * abs(x)


@dataclass(frozen=True)
class Dim:
    """A real number known to lie in ``[value - radius, value + radius]``."""
    value: float
    radius: float = 0.0

    @property
    def lo(self) -> float:
        return self.value - self.radius

    @property
    def hi(self) -> float:
        return self.value + self.radius

    def __add__(self, other):
        other = _as_dim(other)
        v = self.value + other.value
        return Dim(v, self.radius + other.radius + _rounding(v))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_dim(other)
        v = self.value - other.value
        return Dim(v, self.radius + other.radius + _rounding(v))

    def __mul__(self, other):
        other = _as_dim(other)
        v = self.value * other.value
        r = abs(self.value) * other.radius + abs(other.value) * self.radius + self.radius * other.radius
        return Dim(v, r + _rounding(v))

    __rmul__ = __mul__

    def square(self) -> Dim:
        return self * self

    def sqrt(self) -> Dim:
        if self.lo < 0:
            raise ComputationError(f'square root of a possibly negative quantity {self}')
        v = math.sqrt(self.value)
        if self.radius == 0:
            return Dim(v, _rounding(v) if v * v != self.value else 0.0)
        # |sqrt(x) - sqrt(a)| <= r / (sqrt(a - r) + sqrt(a))
        r = self.radius / (math.sqrt(self.lo) + v) if self.lo > 0 else math.sqrt(self.radius)
        return Dim(v, r + _rounding(v))

    def overlaps(self, other) -> bool:
        other = _as_dim(other)
        return abs(self.value - other.value) <= self.radius + other.radius

    def __str__(self):
        return f'{self.value:.9f}'


def _as_dim(x) -> Dim:
    return x if isinstance(x, Dim) else Dim(float(x), 0.0)


def compare_dims(a, b, margin: float = DECISION_MARGIN) -> int:
    """-1, 0 or 1; operands whose intervals touch count as equal.

    Operands that are apart by more than their radii but by less than
    ``margin`` raise :class:`PrecisionError`.
    """
    a, b = _as_dim(a), _as_dim(b)
    gap = a.value - b.value
    if abs(gap) <= a.radius + b.radius:
        return 0
    if abs(gap) < margin:
        raise PrecisionError(f'cannot decide {a.value!r} vs {b.value!r}: gap {gap:.3g} below margin {margin}')
    return 1 if gap > 0 else -1


def left_mult_matrix(ring: FusionRing, i: int) -> np.ndarray:
    """``M[k, j] = N[i, j, k]``: column ``j`` is the decomposition of ``X_i X_j``."""
    return ring.N[ring.check_index(i)].T.copy()


# exact fallback: characteristic polynomial and Sturm sequences over Q

def charpoly(M) -> list[int]:
    """Integer coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier)."""
    A = [[int(x) for x in row] for row in np.asarray(M)]
    n = len(A)
    coeffs = [1]
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        # Mk <- A @ Mk + c_prev * I
        Mk = [[sum(A[r][s] * Mk[s][c] for s in range(n)) + (c_prev if r == c else 0) for c in range(n)]
              for r in range(n)]
        AM_trace = sum(A[r][s] * Mk[s][r] for r in range(n) for s in range(n))
        if AM_trace % k:
            raise ComputationError('non-integral Faddeev-LeVerrier step')
        coeffs.append(-AM_trace // k)
    return coeffs


def _trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _rem(p, q):
    p = [Fraction(c) for c in p]
    while len(p) >= len(q) and any(p):
        f = p[0] / q[0]
        for k in range(len(q)):
            p[k] -= f * q[k]
        p = p[1:]
    return _trim(p) if p else [Fraction(0)]


def _derivative(p):
    n = len(p) - 1
    return [c * (n - k) for k, c in enumerate(p[:-1])] or [0]


def _gcd(p, q):
    p, q = [Fraction(c) for c in p], [Fraction(c) for c in q]
    while any(q):
        p, q = q, _rem(p, q)
    return [c / p[0] for c in p]


def _divide(p, q):
    p = [Fraction(c) for c in p]
    out = []
    while len(p) >= len(q):
        f = p[0] / q[0]
        out.append(f)
        for k in range(len(q)):
            p[k] -= f * q[k]
        p = p[1:]
    return out


def _eval(p, x):
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _sturm(p):
    seq = [[Fraction(c) for c in p], [Fraction(c) for c in _derivative(p)]]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _rem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x) -> int:
    signs = [s for s in (_eval(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _largest_root_exact(M) -> tuple[float, float]:
    p = charpoly(M)
    g = _gcd(p, _derivative(p))
    squarefree = _divide(p, g) if len(g) > 1 else [Fraction(c) for c in p]
    seq = _sturm(squarefree)
    hi = Fraction(1 + max(abs(c) for c in p[1:]) if len(p) > 1 else 1)
    lo = Fraction(0)
    v_hi = _sign_changes(seq, hi)
    if _sign_changes(seq, lo) - v_hi < 1:
        raise ComputationError('characteristic polynomial has no positive root')
    while hi - lo > Fraction(1, 2 ** 46):
        mid = (lo + hi) / 2
        if _sign_changes(seq, mid) - v_hi >= 1:
            lo = mid
        else:
            hi = mid
    centre = (lo + hi) / 2
    value = float(centre)
    radius = float((hi - lo) / 2) + abs(float(Fraction(value) - centre)) + _rounding(value)
    return value, radius


def perron_root(M, max_iter: int = 20000, stall_window: int = 200) -> Dim:
    """Certified Perron root of a nonnegative integer matrix."""
    M = np.asarray(M)
    n = M.shape[0]
    A = M.astype(float) + np.eye(n)  # the shift removes periodicity and keeps v > 0
    v = np.ones(n)
    width_mark = math.inf
    for it in range(1, max_iter + 1):
        w = A @ v
        ratios = w / v
        lo, hi = float(ratios.min()), float(ratios.max())
        slack = (n + 3) * EPS * hi
        if hi - lo <= 2 * TARGET_RADIUS:
            value = (lo + hi) / 2 - 1
            return Dim(value, (hi - lo) / 2 + slack + _rounding(value))
        if it % stall_window == 0:
            if hi - lo > width_mark / 2:
                break
            width_mark = hi - lo
        v = w / w.max()
    value, radius = _largest_root_exact(M)
    return Dim(value, radius)


def fp_dim_simple(ring: FusionRing, i: int) -> Dim:
    return fp_dims(ring)[ring.check_index(i)]


@lru_cache(maxsize=256)
def fp_dims(ring: FusionRing) -> tuple[Dim, ...]:
    """Dimensions of all basis elements, in index order."""
    out = []
    for i in range(ring.rank):
        prod = multiply(ring, i, ring.dual[i])
        if prod[ring.unit] == 1 and prod.sum() == 1:
            out.append(Dim(1.0, 0.0))
            continue
        d = perron_root(left_mult_matrix(ring, i))
        if d.lo < 1:
            # the Perron root of a basis element is at least 1; clip the bracket
            hi = d.hi
            d = Dim((1 + hi) / 2, (hi - 1) / 2)
        if d.radius > MAX_RADIUS:
            raise ComputationError(f'dimension of basis element {i} only known to {d.radius:.2g}')
        out.append(d)
    return tuple(out)


def fp_dim_ring(ring: FusionRing, indices: Iterable[int] | None = None) -> Dim:
    """Sum of squared dimensions, over ``indices`` (default: the whole basis)."""
    dims = fp_dims(ring)
    chosen = range(ring.rank) if indices is None else indices
    total = Dim(0.0)
    for i in chosen:
        total = total + dims[i].square()
    return total


def quantize_subtwo(d: Dim, ceiling: int = 100) -> int | None:
    """The ``n >= 3`` with ``d = 2 cos(pi/n)``, if any up to ``ceiling``."""
    d = _as_dim(d)
    if d.value >= 2:
        raise PreconditionError(f'quantization needs a dimension below 2, got {d.value!r}')
    if d.hi < 1:
        raise PreconditionError(f'dimensions of basis elements are at least 1, got {d.value!r}')
    for n in range(3, ceiling + 1):
        if abs(d.value - 2 * math.cos(math.pi / n)) <= d.radius + 1e-9:
            return n
    return None


def smallest_dim_index(ring: FusionRing, subset: Iterable[int]) -> int:
    """Index of minimal dimension; near-ties (overlapping radii) go to the lowest index."""
    members = sorted({ring.check_index(i) for i in subset})
    if not members:
        raise PreconditionError('smallest_dim_index needs a non-empty subset')
    dims = fp_dims(ring)
    best = members[0]
    for i in members[1:]:
        if not dims[i].overlaps(dims[best]) and dims[i].value < dims[best].value:
            best = i
    return best
