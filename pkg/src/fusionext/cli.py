"""Command-line entry point.

Every subcommand prints ``key: value`` records (or one JSON object with
``--json``). Exit codes: 0 success / verified, 1 negative result, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import EnumerationSpec, census_anomalies, enumerate_fusion_rings
from .core import validate_ring
from .errors import FusionError, PreconditionError, StructuralError, TheoryViolation
from .extensions import (factorization_problems, factorize_via_pointed, is_slightly_trivial,
                         nonsimilar_components, synthesize_slightly_trivial)
from .fpdim import fp_dim_ring, fp_dims, quantize_subtwo
from .grading import (check_component_dims, component_type, invertible_objects, universal_grading,
                      validate_grading)
from .groups import group_from_name
from .ringio import emit_ring, load_group, load_ring

__all__ = ['run', 'main', 'build_parser']

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class _Output:
    def __init__(self, stream, as_json: bool):
        self.stream, self.as_json = stream, as_json
        self.records: list[tuple[str, object]] = []

    def add(self, key: str, value) -> None:
        self.records.append((key, value))

    def raw(self, text: str) -> None:
        self.records.append(('', text))

    def flush(self) -> None:
        if self.as_json:
            data: dict = {}
            for key, value in self.records:
                if not key:
                    data.setdefault('documents', []).append(value)
                elif key in data:
                    if not isinstance(data[key], list) or not data.get(f'_{key}_multi'):
                        data[key] = [data[key]]
                        data[f'_{key}_multi'] = True
                    data[key].append(value)
                else:
                    data[key] = value
            data = {k: v for k, v in data.items() if not k.startswith('_')}
            self.stream.write(json.dumps(data, indent=2, sort_keys=True, default=str) + '\n')
            return
        for key, value in self.records:
            self.stream.write(value if not key else f'{key}: {value}\n')


def _indices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(',', ' ').split()]
    except ValueError:
        raise StructuralError(f'expected a comma-separated list of indices, got {text!r}') from None


def _grading_for(doc, out: _Output):
    if doc.grading is not None:
        report = validate_grading(doc.ring, doc.grading)
        if not report.passed:
            raise StructuralError(f'grading in file is invalid: {report.violations[0]}')
        out.add('grading', 'file')
        return doc.grading
    out.add('grading', 'universal')
    return universal_grading(doc.ring)


def cmd_validate(args, out):
    doc = load_ring(args.file, check=False)
    ring = doc.ring
    report = validate_ring(ring)
    out.add('ring', ring.name)
    out.add('rank', ring.rank)
    out.add('passed', str(report.passed).lower())
    for v in report.violations:
        out.add('violation', str(v))
    if doc.grading is not None and report.passed:
        greport = validate_grading(ring, doc.grading)
        out.add('grading_passed', str(greport.passed).lower())
        for v in greport.violations:
            out.add('grading_violation', str(v))
        return OK if greport.passed else NEGATIVE
    return OK if report.passed else NEGATIVE


def cmd_fpdim(args, out):
    ring = load_ring(args.file).ring
    out.add('ring', ring.name)
    for i, d in enumerate(fp_dims(ring)):
        n = quantize_subtwo(d) if d.value < 2 else None
        extra = f' n={n}' if n is not None else ''
        out.add(f'fpdim[{i}]', f'{d.value:.9f} radius={d.radius:.1e}{extra}')
    out.add('total', f'{fp_dim_ring(ring).value:.9f}')
    return OK


def cmd_grading(args, out):
    ring = load_ring(args.file).ring
    grading = universal_grading(ring)
    out.add('ring', ring.name)
    out.add('group_order', grading.group.order)
    out.add('group_abelian', str(grading.group.is_abelian()).lower())
    out.add('deg', ' '.join(str(d) for d in grading.deg))
    for g, comp in grading.components().items():
        out.add(f'component[{g}]', ' '.join(str(i) for i in comp) + f' type={component_type(ring, grading, g)}')
    out.add('invertibles', ' '.join(str(i) for i in sorted(invertible_objects(ring))))
    return OK


def cmd_slightly_trivial(args, out):
    doc = load_ring(args.file)
    grading = _grading_for(doc, out)
    ring = doc.ring
    out.add('ring', ring.name)
    out.add('group_order', grading.group.order)
    witness = is_slightly_trivial(ring, grading)
    if witness is None:
        out.add('slightly_trivial', 'false')
        for g in nonsimilar_components(ring, grading):
            out.add('failing_component', f'{g} members={" ".join(str(i) for i in grading.component(g))}')
        return NEGATIVE
    out.add('slightly_trivial', 'true')
    for e in witness.entries:
        out.add(f'delta[{e.g}]', e.delta)
    for t, (g, i) in sorted(witness.labels().items()):
        out.add(f'label[{t}]', f'delta[{g}]*X[{i}]')
    return OK


def cmd_synthesize(args, out):
    base = load_ring(args.base).ring
    spec = args.group
    group = load_group(spec) if (Path(spec).exists() or spec.endswith('.group')) else group_from_name(spec)
    ring, grading = synthesize_slightly_trivial(base, group, force=args.force)
    text = emit_ring(ring, grading)
    if args.output:
        Path(args.output).write_text(text, encoding='utf-8')
        out.add('written', args.output)
    else:
        out.raw(text)
    out.add('rank', ring.rank)
    out.add('fpdim', f'{fp_dim_ring(ring).value:.9f}')
    out.add('component_dims_passed', str(check_component_dims(ring, grading).passed).lower())
    return OK


def cmd_factorize(args, out):
    doc = load_ring(args.file)
    ring = doc.ring
    out.add('ring', ring.name)
    if args.via_pointed:
        grading = _grading_for(doc, out)
        try:
            fact = factorize_via_pointed(ring, grading)
        except TheoryViolation as exc:
            out.add('exact', 'false')
            out.add('problem', str(exc))
            return NEGATIVE
    else:
        if args.left is None or args.right is None:
            raise PreconditionError('factorize needs --via-pointed or both --left and --right')
        fact, problems = factorization_problems(ring, _indices(args.left), _indices(args.right))
        if fact is None:
            out.add('exact', 'false')
            for p in problems:
                out.add('problem', p)
            return NEGATIVE
    out.add('exact', 'true')
    out.add('left', ' '.join(str(i) for i in fact.left))
    out.add('right', ' '.join(str(i) for i in fact.right))
    for t, (a, b) in sorted(fact.pairing.items()):
        out.add(f'pair[{t}]', f'{a}*{b}')
    return OK


def cmd_verify(args, out):
    from .verify import verify_theorem
    names = [args.theorem] if args.theorem else ['ising', 'rank3']
    status = OK
    reports = []
    for name in names:
        report = verify_theorem(name, max_size=args.max_size, max_mult=args.max_mult, workers=args.workers)
        reports.append(report)
        if not report.verified:
            status = NEGATIVE
    if out.as_json:
        out.add('reports', [r.to_dict() for r in reports])
    else:
        for r in reports:
            for key, value in r.records():
                out.add(key, value)
    return status


def cmd_enumerate(args, out):
    dual = tuple(_indices(args.dual)) if args.dual else None
    spec = EnumerationSpec(args.rank, args.max, dual, unsafe=args.unsafe)
    count, anomalies = 0, 0
    for ring in enumerate_fusion_rings(spec, workers=args.workers):
        count += 1
        out.raw(emit_ring(ring))
        for problem in census_anomalies(ring):
            anomalies += 1
            out.add('anomaly', f'{ring.name}: {problem}')
    out.add('rings', count)
    out.add('anomalies', anomalies)
    return OK if anomalies == 0 else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fusionext', description=__doc__.splitlines()[0])
    parser.add_argument('--json', action='store_true', help='emit one JSON object instead of key: value lines')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', help='check the ring axioms (and the grading, if present)')
    p.add_argument('file')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('fpdim', help='Frobenius-Perron dimensions')
    p.add_argument('file')
    p.set_defaults(func=cmd_fpdim)

    p = sub.add_parser('grading', help='universal grading')
    p.add_argument('file')
    p.set_defaults(func=cmd_grading)

    p = sub.add_parser('slightly-trivial', help='is every component similar to the trivial one?')
    p.add_argument('file')
    p.set_defaults(func=cmd_slightly_trivial)

    p = sub.add_parser('synthesize', help='split slightly trivial extension of a commutative base')
    p.add_argument('base')
    p.add_argument('--group', required=True, help='zN, products like z2xz2, or a .group file')
    p.add_argument('--force', action='store_true', help='allow a non-commutative base')
    p.add_argument('-o', '--output')
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser('factorize', help='exact factorization check')
    p.add_argument('file')
    p.add_argument('--via-pointed', action='store_true', help='use the pointed part and the trivial component')
    p.add_argument('--left')
    p.add_argument('--right')
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser('verify-theorems', help='search for invertible-free components')
    p.add_argument('theorem', nargs='?', choices=['ising', 'rank3'])
    p.add_argument('--max-size', type=int)
    p.add_argument('--max-mult', type=int)
    p.add_argument('--workers', type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('enumerate', help='census of fusion rings')
    p.add_argument('--rank', type=int, required=True)
    p.add_argument('--max', type=int, required=True)
    p.add_argument('--dual', help='fixed duality involution, e.g. 0,2,1')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--unsafe', action='store_true', help='lift the rank/constant guards')
    p.set_defaults(func=cmd_enumerate)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    out = _Output(stdout, args.json)
    try:
        code = args.func(args, out)
    except TheoryViolation as exc:
        out.add('theory_violation', str(exc))
        code = NEGATIVE
    except (FusionError, FileNotFoundError) as exc:
        stderr.write(f'error: {exc}\n')
        return INPUT_ERROR
    out.flush()
    return code


def main() -> None:
    try:
        code = run()
    except BrokenPipeError:  # output piped into e.g. head
        sys.stderr.close()
        code = OK
    sys.exit(code)


if __name__ == '__main__':
    main()
