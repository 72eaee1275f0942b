"""Run the invertible-free component search for the bundled base rings and save the reports."""
import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from fusionext.verify import Reason, verify_theorem


@dataclass(frozen=True)
class Config:
    theorems: tuple[str, ...] = ('ising', 'rank3')
    max_size: int | None = None  # default: ceil(FPdim / 2) + 1
    max_mult: int | None = None  # default: 3
    workers: int = 1
    out_dir: Path = Path('results')


def main(cfg: Config) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in cfg.theorems:
        t = time.perf_counter()
        report = verify_theorem(name, cfg.max_size, cfg.max_mult, cfg.workers)
        elapsed = time.perf_counter() - t
        path = cfg.out_dir / f'verify_{name}.txt'
        path.write_text(report.to_text())
        counts = ', '.join(f'{r.value}={len(report.eliminated_by(r))}' for r in Reason)
        print(f'{name}: {"verified" if report.verified else "FAILED"} in {elapsed:.3f}s; '
              f'examined {report.examined} of {report.search_space}; {counts}; report -> {path}')
        status |= not report.verified
    return status


if __name__ == '__main__':
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument('theorems', nargs='*', default=list(Config.theorems))
    p.add_argument('--max-size', type=int)
    p.add_argument('--max-mult', type=int)
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--out-dir', type=Path, default=Config.out_dir)
    a = p.parse_args()
    raise SystemExit(main(Config(tuple(a.theorems), a.max_size, a.max_mult, a.workers, a.out_dir)))
