"""Synthesize slightly trivial extensions of the base rings and check their structure."""
import argparse
from dataclasses import dataclass

from fusionext import (check_component_dims, fp_dim_ring, group_from_name, invertible_objects, is_slightly_trivial,
                       pointed_part, synthesize_slightly_trivial)
from fusionext.errors import PreconditionError
from fusionext.extensions import factorize_via_pointed
from fusionext.library import a15, fibonacci, ising


@dataclass(frozen=True)
class Config:
    bases: tuple[str, ...] = ('ising', 'a15', 'fib')
    groups: tuple[str, ...] = ('z2', 'z3', 'z2xz2', 'z4', 'z5', 'z6')


BASES = {'ising': ising, 'a15': a15, 'fib': fibonacci}


def main(cfg: Config) -> int:
    print('base\tgroup\trank\tfpdim\tinvertibles\tpointed_profile\tslightly_trivial\tdims_ok\tfactorization')
    bad = 0
    for b in cfg.bases:
        base = BASES[b]()
        for g in cfg.groups:
            group = group_from_name(g)
            ring, grading = synthesize_slightly_trivial(base, group)
            try:
                fact = factorize_via_pointed(ring, grading)
                fact_s = f'{len(fact.left)}x{len(fact.right)}'
            except PreconditionError:
                fact_s = 'n/a (base has invertibles)'
            similar = is_slightly_trivial(ring, grading) is not None
            dims_ok = check_component_dims(ring, grading).passed
            bad += not (similar and dims_ok)
            print(f'{b}\t{g}\t{ring.rank}\t{fp_dim_ring(ring).value:.6f}\t{len(invertible_objects(ring))}\t'
                  f'{pointed_part(ring).group.order_profile()}\t{similar}\t{dims_ok}\t{fact_s}')
    return int(bad > 0)


if __name__ == '__main__':
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument('--bases', nargs='*', default=list(Config.bases), choices=sorted(BASES))
    p.add_argument('--groups', nargs='*', default=list(Config.groups))
    a = p.parse_args()
    raise SystemExit(main(Config(tuple(a.bases), tuple(a.groups))))
