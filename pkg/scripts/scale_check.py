"""Time the witnessed SNF of K_m x C_n Laplacians as the graph grows."""

import argparse
import time
from math import prod

from critgroup.knc_closed_form import tree_number_closed
from critgroup.multigraph import km_cn, laplacian
from critgroup.zmatrix import smith_normal_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--n-values", type=int, nargs="+", default=[4, 8, 12, 16, 20])
    ap.add_argument("--verify", action="store_true", help="also check the witnesses")
    a = ap.parse_args()
    print(f"{'dim':>5} {'seconds':>9}  order==closed")
    for n in a.n_values:
        lap = laplacian(km_cn(a.m, n))
        t0 = time.perf_counter()
        dec = smith_normal_form(lap)
        elapsed = time.perf_counter() - t0
        ok = prod(d for d in dec.diag if d) == tree_number_closed(a.m, n)
        if a.verify:
            ok = ok and dec.verify(lap)
        print(f"{lap.rows:>5} {elapsed:>9.3f}  {ok}")


if __name__ == "__main__":
    main()
