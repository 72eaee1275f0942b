"""Enumerate small fusion rings and tabulate their dimensions, gradings and anomalies."""
import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from fusionext import fp_dim_ring, fp_dims, invertible_objects, is_commutative, universal_grading
from fusionext.census import EnumerationSpec, census_anomalies, enumerate_fusion_rings
from fusionext.ringio import emit_ring


@dataclass(frozen=True)
class Config:
    max_rank: int = 4
    max_constant: int = 2
    workers: int = 1
    out_dir: Path = Path('results')


def main(cfg: Config) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    rows, docs, anomalies = [], [], 0
    for rank in range(1, cfg.max_rank + 1):
        t = time.perf_counter()
        rings = list(enumerate_fusion_rings(EnumerationSpec(rank, cfg.max_constant), workers=cfg.workers))
        print(f'rank {rank}: {len(rings)} rings in {time.perf_counter() - t:.2f}s')
        for ring in rings:
            problems = census_anomalies(ring)
            anomalies += len(problems)
            dims = ' '.join(f'{d.value:.6f}' for d in fp_dims(ring))
            rows.append(f'{ring.name}\t{fp_dim_ring(ring).value:.6f}\t{len(invertible_objects(ring))}\t'
                        f'{universal_grading(ring).group.order}\t{int(is_commutative(ring))}\t{dims}\t'
                        f'{"; ".join(problems)}')
            docs.append(emit_ring(ring))
    table = cfg.out_dir / f'census_r{cfg.max_rank}_m{cfg.max_constant}.tsv'
    table.write_text('name\tfpdim\tinvertibles\tgrading_order\tcommutative\tdims\tanomalies\n' + '\n'.join(rows) + '\n')
    (cfg.out_dir / f'census_r{cfg.max_rank}_m{cfg.max_constant}.rings').write_text('\n'.join(docs))
    print(f'{len(rows)} rings, {anomalies} anomalies; table -> {table}')
    return int(anomalies > 0)


if __name__ == '__main__':
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument('--max-rank', type=int, default=Config.max_rank)
    p.add_argument('--max-constant', type=int, default=Config.max_constant)
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--out-dir', type=Path, default=Config.out_dir)
    a = p.parse_args()
    raise SystemExit(main(Config(a.max_rank, a.max_constant, a.workers, a.out_dir)))
