"""Compare the K_m x C_n closed form against the Laplacian SNF over a grid and time both."""

import argparse
import time
from dataclasses import dataclass

from critgroup.critical_group import critical_group, groups_isomorphic
from critgroup.knc_closed_form import critical_group_closed
from critgroup.multigraph import km_cn


@dataclass
class SweepConfig:
    m_max: int = 8
    n_max: int = 20
    max_vertices: int = 130


def run(cfg: SweepConfig) -> int:
    mismatches = 0
    t_closed = t_snf = 0.0
    cells = 0
    for m in range(1, cfg.m_max + 1):
        for n in range(1, cfg.n_max + 1):
            if m * n > cfg.max_vertices:
                continue
            t0 = time.perf_counter()
            closed = critical_group_closed(m, n)
            t1 = time.perf_counter()
            snf = critical_group(km_cn(m, n))
            t2 = time.perf_counter()
            t_closed += t1 - t0
            t_snf += t2 - t1
            cells += 1
            if not groups_isomorphic(closed.group, snf):
                mismatches += 1
                print(f"MISMATCH m={m} n={n} closed={closed.group} snf={snf}")
    print(f"{cells} cells, {mismatches} mismatches")
    print(f"closed form {t_closed:.3f}s, Laplacian SNF {t_snf:.3f}s")
    return 1 if mismatches else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--max-vertices", type=int, default=130)
    a = ap.parse_args()
    raise SystemExit(run(SweepConfig(a.m_max, a.n_max, a.max_vertices)))


if __name__ == "__main__":
    main()
