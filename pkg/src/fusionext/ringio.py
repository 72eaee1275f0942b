"""Line-oriented text format for rings, gradings and group tables.

Grammar (all indices 0-based, ``#`` starts a comment)::

    ring <name> rank=<R> unit=<u>
    dual <d_0> ... <d_{R-1}>
    N <i> <j> : <k_0> ... <k_{R-1}>          # R*R lines, one per (i, j)
    group order=<n> identity=<e>             # optional grading block
    row <g_0> ... <g_{n-1}>                  # n lines of the Cayley table
    deg <deg_0> ... <deg_{R-1}>

A group file holds only the ``group``/``row`` lines. No floating point is
ever stored; dimensions are always recomputed.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .core import AxiomReport, FusionRing, validate_ring
from .errors import FusionError, StructuralError
from .groups import FiniteGroup
from .grading import Grading

__all__ = [
    'ParseError', 'RingAxiomError', 'RingDocument',
    'parse_ring', 'parse_document', 'emit_ring', 'parse_group', 'emit_group',
    'load_ring', 'load_group', 'bundled_path', 'bundled_names',
]


class ParseError(StructuralError):
    """Shape or syntax problem, located at a line and column of the input."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line, self.column, self.message = line, column, message
        super().__init__(f'line {line}, column {column}: {message}')


class RingAxiomError(FusionError):
    """The document is well formed but the tensor violates the ring axioms."""

    def __init__(self, report: AxiomReport):
        self.report = report
        shown = '; '.join(str(v) for v in report.violations[:5])
        more = len(report.violations) - 5
        super().__init__(f'ring axioms violated: {shown}' + (f' (+{more} more)' if more > 0 else ''))


@dataclass(frozen=True)
class RingDocument:
    ring: FusionRing
    grading: Grading | None = None

    @property
    def name(self) -> str:
        return self.ring.name


class _Lines:
    """Tokenised non-blank lines, each token remembering its column."""

    def __init__(self, text: str):
        self.items = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split('#', 1)[0]
            tokens, col = [], 0
            for part in body.split():
                col = body.index(part, col)
                tokens.append((part, col + 1))
                col += len(part)
            if tokens:
                self.items.append((lineno, tokens))
        self.pos = 0
        self.end_line = len(text.splitlines()) + 1  # where end-of-input errors point

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, keyword: str):
        item = self.peek()
        if item is None:
            raise ParseError(f'expected {keyword!r} line, found end of input', self.end_line)
        lineno, tokens = item
        if tokens[0][0] != keyword:
            raise ParseError(f'expected {keyword!r} line, found {tokens[0][0]!r}', lineno, tokens[0][1])
        self.pos += 1
        return lineno, tokens


def _int(token, lineno) -> int:
    text, col = token
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f'expected an integer, found {text!r}', lineno, col) from None
    if value < 0:
        raise ParseError(f'expected a nonnegative integer, found {text!r}', lineno, col)
    return value


def _ints(tokens, lineno, count: int, what: str, after=None) -> list[int]:
    values = [_int(t, lineno) for t in tokens]
    if len(values) != count:
        col = tokens[count][1] if len(values) > count else (tokens[-1][1] if tokens else (after or 1))
        raise ParseError(f'{what} needs {count} entries, found {len(values)}', lineno, col)
    return values


def _keyvals(tokens, lineno, keys: tuple[str, ...]) -> dict[str, int]:
    out = {}
    for text, col in tokens:
        key, sep, value = text.partition('=')
        if not sep or key not in keys:
            raise ParseError(f'unexpected field {text!r}, expected {"/".join(keys)}=<int>', lineno, col)
        out[key] = _int((value, col + len(key) + 1), lineno)
    missing = [k for k in keys if k not in out]
    if missing:
        raise ParseError(f'missing field(s) {", ".join(missing)}', lineno)
    return out


def _parse_group_block(lines: _Lines) -> FiniteGroup:
    lineno, tokens = lines.take('group')
    head = _keyvals(tokens[1:], lineno, ('order', 'identity'))
    n = head['order']
    if n == 0:
        raise ParseError('group order must be positive', lineno)
    table = []
    for _ in range(n):
        rl, rt = lines.take('row')
        row = _ints(rt[1:], rl, n, 'row')
        for value, (text, col) in zip(row, rt[1:]):
            if value >= n:
                raise ParseError(f'group element {value} out of range [0, {n})', rl, col)
        table.append(row)
    try:
        return FiniteGroup.from_table(table, identity=head['identity'])
    except StructuralError as exc:
        raise ParseError(f'invalid group table: {exc}', lineno) from None


def parse_document(text: str, check: bool = True) -> RingDocument:
    """Parse a ring document; with ``check`` the ring axioms must hold."""
    lines = _Lines(text)
    lineno, tokens = lines.take('ring')
    if len(tokens) < 2 or '=' in tokens[1][0]:
        raise ParseError('ring header needs a name', lineno, tokens[0][1] + 4)
    name = tokens[1][0]
    head = _keyvals(tokens[2:], lineno, ('rank', 'unit'))
    r, unit = head['rank'], head['unit']
    if r == 0:
        raise ParseError('rank must be positive', lineno)
    if unit >= r:
        raise ParseError(f'unit {unit} out of range [0, {r})', lineno)
    dl, dt = lines.take('dual')
    dual = _ints(dt[1:], dl, r, 'dual', after=dt[0][1])
    for value, (text_, col) in zip(dual, dt[1:]):
        if value >= r:
            raise ParseError(f'dual index {value} out of range [0, {r})', dl, col)
    N = np.zeros((r, r, r), dtype=np.int64)
    seen = set()
    for _ in range(r * r):
        item = lines.peek()
        if item is not None and item[1][0][0] != 'N':
            lineno, tokens = item
            raise ParseError(f'expected {r * r} N lines, found {len(seen)} before {tokens[0][0]!r}',
                             lineno, tokens[0][1])
        nl, nt = lines.take('N')
        if len(nt) < 4 or nt[3][0] != ':':
            raise ParseError("N line must read 'N <i> <j> : <k_0> ...'", nl, nt[0][1])
        i, j = _int(nt[1], nl), _int(nt[2], nl)
        for value, (text_, col) in ((i, nt[1]), (j, nt[2])):
            if value >= r:
                raise ParseError(f'index {value} out of range [0, {r}) for rank {r}', nl, col)
        if (i, j) in seen:
            raise ParseError(f'duplicate N line for ({i}, {j})', nl, nt[0][1])
        seen.add((i, j))
        N[i, j] = _ints(nt[4:], nl, r, f'N {i} {j}', after=nt[3][1])
    grading = None
    item = lines.peek()
    if item is not None and item[1][0][0] == 'N':
        lineno, tokens = item
        raise ParseError(f'too many N lines for rank {r} (expected {r * r})', lineno, tokens[0][1])
    if item is not None and item[1][0][0] == 'group':
        group = _parse_group_block(lines)
        gl, gt = lines.take('deg')
        deg = _ints(gt[1:], gl, r, 'deg', after=gt[0][1])
        for value, (text_, col) in zip(deg, gt[1:]):
            if value >= group.order:
                raise ParseError(f'degree {value} out of range [0, {group.order})', gl, col)
        grading = Grading(group, tuple(deg))
    item = lines.peek()
    if item is not None:
        lineno, tokens = item
        raise ParseError(f'unexpected {tokens[0][0]!r} line', lineno, tokens[0][1])
    ring = FusionRing(N, tuple(dual), unit, name)
    if check:
        report = validate_ring(ring)
        if not report.passed:
            raise RingAxiomError(report)
    return RingDocument(ring, grading)


def parse_ring(text: str, check: bool = True) -> tuple[FusionRing, Grading | None]:
    doc = parse_document(text, check=check)
    return doc.ring, doc.grading


def emit_group(group: FiniteGroup) -> str:
    lines = [f'group order={group.order} identity={group.identity}']
    lines += ['row ' + ' '.join(str(x) for x in row) for row in group.table]
    return '\n'.join(lines) + '\n'


def emit_ring(ring: FusionRing, grading: Grading | None = None, name: str | None = None) -> str:
    r = ring.rank
    label = name or ring.name or 'unnamed'
    lines = [f'ring {label} rank={r} unit={ring.unit}', 'dual ' + ' '.join(str(d) for d in ring.dual)]
    for i in range(r):
        for j in range(r):
            lines.append(f'N {i} {j} : ' + ' '.join(str(int(c)) for c in ring.N[i, j]))
    text = '\n'.join(lines) + '\n'
    if grading is not None:
        text += emit_group(grading.group)
        text += 'deg ' + ' '.join(str(d) for d in grading.deg) + '\n'
    return text


def parse_group(text: str) -> FiniteGroup:
    lines = _Lines(text)
    group = _parse_group_block(lines)
    item = lines.peek()
    if item is not None:
        lineno, tokens = item
        raise ParseError(f'unexpected {tokens[0][0]!r} line', lineno, tokens[0][1])
    return group


def bundled_names() -> list[str]:
    return sorted(p.name for p in resources.files('fusionext.data').iterdir()
                  if p.name.endswith(('.ring', '.group')))


def bundled_path(name: str):
    return resources.files('fusionext.data').joinpath(name)


def _read(source, suffix: str) -> str:
    """Read a path, falling back to a bundled file of the same name (suffix optional)."""
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding='utf-8')
    for name in (path.name, path.name + suffix):
        bundled = bundled_path(name)
        if bundled.is_file():
            return bundled.read_text(encoding='utf-8')
    raise FileNotFoundError(f'no such file or bundled document: {source}')


def load_ring(source, check: bool = True) -> RingDocument:
    return parse_document(_read(source, '.ring'), check=check)


def load_group(source) -> FiniteGroup:
    group = parse_group(_read(source, '.group'))
    return dataclasses.replace(group, name=group.name or Path(str(source)).name.removesuffix('.group'))
