"""Bounded feasibility search for invertible-free components.

Suppose some component ``C_g`` of an extension of a base ring ``D`` has no
invertible object. Every simple ``X_k`` in it has ``X_k X_k*`` inside ``D``,
say ``1 + sum_i m_k[i] X_i`` with ``m_k != 0``, so ``d_k^2 = 1 + sum_i m_k[i] d_i``.
A candidate component is a multiset of such vectors ``m_k``. Candidates are
ruled out by

* the dimension budget: the component dimensions must add up to ``FPdim(D)``;
* the common-summand obstruction: for the smallest ``Y`` and the multiplier
  ``x0`` (smallest non-invertible of ``D``, ``1 < d(x0) < 2``) the product
  ``x0 Y`` is simple, so ``Y Y*`` and ``x0* x0`` share only the unit;
* the dichotomy: ``x0 Y`` is a simple of dimension ``d(x0) d(Y)`` in ``C_g``.

An empty survivor list means no invertible-free component exists within
the bounds, i.e. every component contains an invertible.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import FusionRing, multiply, simple_index, validate_ring
from .errors import ConfigurationError, PreconditionError, TheoryViolation
from .extensions import factorize_via_pointed, synthesize_slightly_trivial
from .fpdim import Dim, compare_dims, fp_dim_ring, fp_dims, smallest_dim_index
from .grading import Grading, invertible_objects
from .groups import cyclic
from .library import a15, ising

__all__ = [
    'Reason', 'HypotheticalComponent', 'Elimination', 'VerificationReport',
    'HasInvertible', 'SimpleProduct', 'low_simps_dichotomy',
    'common_summand_obstruction', 'shared_summands',
    'search_invertible_free_component', 'verify_theorem', 'THEOREMS',
]


class Reason(str, enum.Enum):
    DimBudgetExceeded = 'DimBudgetExceeded'
    TotalDimMismatch = 'TotalDimMismatch'
    DichotomyUnsatisfiable = 'DichotomyUnsatisfiable'
    CommonSummandObstruction = 'CommonSummandObstruction'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class HasInvertible:
    delta: int


@dataclass(frozen=True)
class SimpleProduct:
    y: int
    product: int


def low_simps_dichotomy(ring: FusionRing, grading: Grading, x: int, g: int) -> HasInvertible | SimpleProduct:
    """Either component ``g`` has an invertible, or ``x * Y`` is simple for its smallest ``Y``."""
    ring.check_index(x)
    if grading.deg[x] != grading.group.identity:
        raise PreconditionError(f'{x} is not in the trivial component')
    d = fp_dims(ring)[x]
    if compare_dims(d, 1) <= 0 or compare_dims(d, 2) >= 0:
        raise PreconditionError(f'the dichotomy needs 1 < FPdim({x}) < 2, got {d}')
    comp = grading.component(g)
    inv = sorted(set(comp) & invertible_objects(ring))
    if inv:
        return HasInvertible(inv[0])
    y = smallest_dim_index(ring, comp)
    t = simple_index(multiply(ring, x, y))
    if t is None:
        raise TheoryViolation(f'component {g} has no invertible, yet {x} * {y} is not simple')
    return SimpleProduct(y, t)


def shared_summands(decomp_a, decomp_b, unit: int = 0) -> list[int]:
    a, b = np.asarray(decomp_a), np.asarray(decomp_b)
    if a.shape != b.shape:
        raise ValueError('decompositions must be over the same basis')
    return [i for i in range(len(a)) if i != unit and a[i] > 0 and b[i] > 0]


def common_summand_obstruction(decomp_a, decomp_b, unit: int = 0) -> bool:
    """True when the two decompositions share a summand other than the unit."""
    return bool(shared_summands(decomp_a, decomp_b, unit))


@dataclass(frozen=True)
class HypotheticalComponent:
    """``products[k][i]`` is the multiplicity of the ``i``-th non-unit base element in ``X_k X_k*``."""
    products: tuple[tuple[int, ...], ...]
    squares: tuple[Dim, ...]

    @property
    def size(self) -> int:
        return len(self.products)

    @property
    def dims(self) -> tuple[Dim, ...]:
        return tuple(s.sqrt() for s in self.squares)

    def total(self) -> Dim:
        return sum(self.squares, Dim(0.0))

    def smallest(self) -> int:
        best = 0
        for k in range(1, self.size):
            if not self.squares[k].overlaps(self.squares[best]) and self.squares[k].value < self.squares[best].value:
                best = k
        return best


@dataclass(frozen=True)
class Elimination:
    candidate: HypotheticalComponent
    reason: Reason
    detail: str

    def sort_key(self):
        return (self.candidate.size, self.candidate.products)


@dataclass(frozen=True)
class FactorizationCheck:
    group: str
    left: int
    right: int
    ok: bool
    detail: str = ''


def _fmt_vec(v) -> str:
    return '[' + ','.join(str(x) for x in v) + ']'


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    base: str
    budget: Dim
    multiplier: int
    multiplier_dim: Dim
    nonunit: tuple[int, ...]
    max_size: int
    max_mult: int
    search_space: int
    examined: int
    eliminations: tuple[Elimination, ...]
    survivors: tuple[HypotheticalComponent, ...]
    factorizations: tuple[FactorizationCheck, ...] = ()

    @property
    def verified(self) -> bool:
        return not self.survivors and all(f.ok for f in self.factorizations)

    def eliminated_by(self, reason: Reason) -> list[Elimination]:
        return [e for e in self.eliminations if e.reason == reason]

    def records(self) -> list[tuple[str, str]]:
        out = [
            ('theorem', self.theorem), ('base', self.base), ('budget', str(self.budget)),
            ('multiplier', str(self.multiplier)), ('multiplier_dim', str(self.multiplier_dim)),
            ('nonunit_basis', _fmt_vec(self.nonunit)),
            ('max_size', str(self.max_size)), ('max_mult', str(self.max_mult)),
            ('search_space', str(self.search_space)), ('examined', str(self.examined)),
            ('eliminated', str(len(self.eliminations))), ('survivors', str(len(self.survivors))),
        ]
        for reason in Reason:
            out.append((f'eliminated[{reason}]', str(len(self.eliminated_by(reason)))))
        for e in self.eliminations:
            c = e.candidate
            out.append(('elimination', f'size={c.size} products={"|".join(_fmt_vec(p) for p in c.products)} '
                                       f'dims={_fmt_vec(str(d) for d in c.dims)} total={c.total()} '
                                       f'reason={e.reason} detail={e.detail}'))
        for c in self.survivors:
            out.append(('survivor', f'size={c.size} products={"|".join(_fmt_vec(p) for p in c.products)} '
                                    f'dims={_fmt_vec(str(d) for d in c.dims)} total={c.total()}'))
        for f in self.factorizations:
            out.append(('factorization', f'group={f.group} left={f.left} right={f.right} '
                                         f'status={"ok" if f.ok else "failed"}' + (f' detail={f.detail}' if f.detail else '')))
        out.append(('status', 'verified' if self.verified else 'failed'))
        return out

    def to_text(self) -> str:
        return ''.join(f'{k}: {v}\n' for k, v in self.records())

    def to_dict(self) -> dict:
        def comp(c):
            return {'size': c.size, 'products': [list(p) for p in c.products],
                    'dims': [str(d) for d in c.dims], 'total': str(c.total())}
        return {
            'theorem': self.theorem, 'base': self.base, 'budget': str(self.budget),
            'multiplier': self.multiplier, 'multiplier_dim': str(self.multiplier_dim),
            'nonunit_basis': list(self.nonunit), 'max_size': self.max_size, 'max_mult': self.max_mult,
            'search_space': self.search_space, 'examined': self.examined,
            'eliminations': [dict(comp(e.candidate), reason=str(e.reason), detail=e.detail)
                             for e in self.eliminations],
            'survivors': [comp(c) for c in self.survivors],
            'factorizations': [{'group': f.group, 'left': f.left, 'right': f.right, 'ok': f.ok,
                                'detail': f.detail} for f in self.factorizations],
            'verified': self.verified,
        }


@dataclass
class _Context:
    base: FusionRing
    nonunit: tuple[int, ...]
    base_dims: tuple[Dim, ...]
    budget: Dim
    x0: int
    x0_square: Dim
    x0_products: np.ndarray
    vectors: list[tuple[int, ...]] = field(default_factory=list)

    def component(self, products) -> HypotheticalComponent:
        squares = []
        for m in products:
            s = Dim(1.0)
            for c, d in zip(m, self.base_dims):
                if c:
                    s = s + d * c
            squares.append(s)
        return HypotheticalComponent(tuple(products), tuple(squares))

    def judge(self, comp: HypotheticalComponent) -> tuple[Reason, str] | None:
        for s in comp.squares:
            if compare_dims(s, 2) < 0:
                raise TheoryViolation(f'hypothetical simple of dimension^2 {s} below 2')
        y = comp.smallest()
        yy = np.zeros(self.base.rank, dtype=np.int64)
        yy[self.base.unit] = 1
        yy[list(self.nonunit)] = comp.products[y]
        shared = shared_summands(yy, self.x0_products, self.base.unit)
        if shared:
            return Reason.CommonSummandObstruction, (
                f'Y=#{y} Y.Y*={_fmt_vec(comp.products[y])} shares {_fmt_vec(shared)} with x0.x0*')
        target = self.x0_square * comp.squares[y]
        if not any(compare_dims(s, target) == 0 for s in comp.squares):
            return Reason.DichotomyUnsatisfiable, f'no object of dimension^2 {target} = d(x0)^2 d(Y)^2'
        total = comp.total()
        if compare_dims(total, self.budget) != 0:
            return Reason.TotalDimMismatch, f'total {total} != {self.budget}'
        return None

    def explore(self, start: int, max_size: int):
        """Depth-first walk over sorted multisets whose first vector is ``vectors[start]``."""
        eliminated, survivors = [], []
        stack = [((start,), Dim(0.0))]
        while stack:
            idx, parent_total = stack.pop()
            comp = self.component([self.vectors[i] for i in idx])
            if len(idx) > 1 and compare_dims(parent_total, self.budget) > 0:
                eliminated.append(Elimination(comp, Reason.DimBudgetExceeded,
                                              f'prefix total {parent_total} > {self.budget}'))
                continue
            verdict = self.judge(comp)
            if verdict is None:
                survivors.append(comp)
            else:
                eliminated.append(Elimination(comp, *verdict))
            if len(idx) < max_size:
                total = comp.total()
                for nxt in range(len(self.vectors) - 1, idx[-1] - 1, -1):
                    stack.append((idx + (nxt,), total))
        return eliminated, survivors


def _context(base: FusionRing, max_mult: int) -> _Context:
    report = validate_ring(base)
    if not report.passed:
        raise PreconditionError(f'base ring is invalid: {report.violations[0]}')
    dims = fp_dims(base)
    noninv = [i for i in range(base.rank) if i not in invertible_objects(base)]
    if not noninv:
        raise PreconditionError('base ring has no simple with 1 < FPdim < 2 (it is pointed)')
    x0 = smallest_dim_index(base, noninv)
    if compare_dims(dims[x0], 2) >= 0:
        raise PreconditionError(f'smallest non-invertible has FPdim {dims[x0]} >= 2; no simple with 1 < FPdim < 2')
    nonunit = tuple(i for i in range(base.rank) if i != base.unit)
    ctx = _Context(base, nonunit, tuple(dims[i] for i in nonunit), fp_dim_ring(base), x0,
                   dims[x0].square(), multiply(base, base.dual[x0], x0))
    grid = [tuple(v) for v in np.ndindex(*(max_mult + 1,) * len(nonunit)) if any(v)]
    ctx.vectors = sorted(grid)
    return ctx


def search_invertible_free_component(base: FusionRing, max_size: int, max_mult: int,
                                     theorem: str = '', workers: int = 1) -> VerificationReport:
    """Exhaust candidate components of size ``<= max_size`` and multiplicities ``<= max_mult``."""
    if max_mult < 1:
        raise ConfigurationError(f'max_mult={max_mult}: every X.X* of a non-invertible has a non-unit summand, '
                                 f'so multiplicities up to at least 1 are needed')
    ctx = _context(base, max_mult)
    floor_size = math.floor(ctx.budget.value / 2)
    if max_size < floor_size:
        raise ConfigurationError(f'max_size={max_size} is below floor(FPdim/2)={floor_size}, '
                                 f'the largest possible invertible-free component')
    starts = range(len(ctx.vectors))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: ctx.explore(s, max_size), starts))
    else:
        parts = [ctx.explore(s, max_size) for s in starts]
    eliminated = sorted((e for part in parts for e in part[0]), key=Elimination.sort_key)
    survivors = sorted((c for part in parts for c in part[1]), key=lambda c: (c.size, c.products))
    v = len(ctx.vectors)
    space = sum(math.comb(v + s - 1, s) for s in range(1, max_size + 1))
    return VerificationReport(
        theorem=theorem or f'search:{base.name}', base=base.name, budget=ctx.budget,
        multiplier=ctx.x0, multiplier_dim=fp_dims(base)[ctx.x0], nonunit=ctx.nonunit,
        max_size=max_size, max_mult=max_mult, search_space=space,
        examined=len(eliminated) + len(survivors),
        eliminations=tuple(eliminated), survivors=tuple(survivors))


THEOREMS = {'ising': ising, 'rank3': a15}
_ALIASES = {'rank3_a15': 'rank3', 'a15': 'rank3', 'rank3': 'rank3', 'ising': 'ising'}


def verify_theorem(name: str, max_size: int | None = None, max_mult: int | None = None,
                   workers: int = 1) -> VerificationReport:
    """Every extension of the named base ring is slightly trivial (within the search bounds).

    For the rank-3 base, additionally checks ``C = C_pt * D`` on the
    synthesized Z2 and Z3 extensions.
    """
    key = _ALIASES.get(name.lower())
    if key is None:
        raise ConfigurationError(f'unknown theorem {name!r}; choose from {sorted(THEOREMS)}')
    base = THEOREMS[key]()
    if max_size is None:
        max_size = math.ceil(fp_dim_ring(base).value / 2) + 1
    if max_mult is None:
        max_mult = 3
    report = search_invertible_free_component(base, max_size, max_mult, theorem=key, workers=workers)
    if key != 'rank3':
        return report
    checks = []
    for group in (cyclic(2), cyclic(3)):
        ring, grading = synthesize_slightly_trivial(base, group)
        try:
            fact = factorize_via_pointed(ring, grading)
            checks.append(FactorizationCheck(group.name, len(fact.left), len(fact.right), True))
        except (TheoryViolation, PreconditionError) as exc:
            checks.append(FactorizationCheck(group.name, 0, 0, False, str(exc)))
    return dataclasses.replace(report, factorizations=tuple(checks))
