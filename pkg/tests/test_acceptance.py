"""Exit criteria for the package. All comparisons are exact integer equality.

Each test records a PASS/FAIL line that is printed in the pytest summary.
"""

import random
import time
from math import gcd, prod

import pytest

from critgroup.critical_group import critical_group, groups_isomorphic, spanning_tree_count
from critgroup.knc_closed_form import (
    critical_group_closed,
    h_g,
    matrix_B,
    matrix_B_snf_closed,
    matrix_W,
    matrix_W_snf_closed,
    sequence_point,
    tree_number_closed,
    verify_block_reduction,
)
from critgroup.multigraph import complete_graph, cycle_graph, km_cn, laplacian
from critgroup.zmatrix import (
    IntMatrix,
    delete_row_col,
    determinant,
    minors_gcd,
    smith_diagonal,
    smith_normal_form,
)

from oracles import sequences_by_powers

MAIN_GRID = [(m, n) for m in range(3, 7) for n in range(3, 11)]


def test_1_closed_form_grid(criterion):
    start = time.perf_counter()
    bad = [
        (m, n) for m, n in MAIN_GRID
        if not groups_isomorphic(critical_group_closed(m, n).group, critical_group(km_cn(m, n)))
    ]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    criterion("1 closed form grid", ok, f"{len(MAIN_GRID)} cells, mismatches={bad}, {elapsed:.2f}s (< 60s)")
    assert not bad
    assert elapsed < 60


def test_2_tree_count_grid(criterion):
    cells = sorted(set(MAIN_GRID) | {
        (m, n) for m in range(1, 7) for n in range(1, 11) if m <= 2 or n <= 2
    })
    bad = []
    for m, n in cells:
        g = km_cn(m, n)
        lap = laplacian(g)
        cofactor = determinant(delete_row_col(lap, 0, 0)) if g.vertex_count > 1 else 1
        snf_product = prod(d for d in smith_diagonal(lap) if d)
        if not tree_number_closed(m, n) == cofactor == snf_product:
            bad.append((m, n))
    criterion("2 tree count grid", not bad, f"{len(cells)} cells incl. m in {{1,2}}, n in {{1,2}}, mismatches={bad}")
    assert not bad


def test_3_spot_values(criterion):
    r33, r34 = critical_group_closed(3, 3), critical_group_closed(3, 4)
    ok = (
        r33.stated_factors == (1, 6, 6, 18, 18) and r33.tree_count == 11664
        and r34.stated_factors == (1, 5, 5, 35, 420) and r34.tree_count == 367500
        # the Laplacian route must give the same numbers
        and smith_diagonal(laplacian(km_cn(3, 3)))[-6:] == (1, 6, 6, 18, 18, 0)
        and smith_diagonal(laplacian(km_cn(3, 4)))[-6:] == (1, 5, 5, 35, 420, 0)
        and spanning_tree_count(km_cn(3, 3)) == 11664
        and spanning_tree_count(km_cn(3, 4)) == 367500
    )
    criterion("3 spot values", ok, "K3xC3 (1,6,6,18,18)/11664, K3xC4 (1,5,5,35,420)/367500")
    assert ok


def test_4a_complete_graphs(criterion):
    bad = [m for m in range(3, 9) if critical_group(complete_graph(m)).invariant_factors != (m,) * (m - 2)]
    criterion("4a complete graphs", not bad, f"K(K_m) = (Z_m)^(m-2), 3<=m<=8, mismatches={bad}")
    assert not bad


def test_4b_cycles(criterion):
    bad = [n for n in range(3, 13) if critical_group(cycle_graph(n)).invariant_factors != (n,)]
    criterion("4b cycles", not bad, f"K(C_n) = Z_n, 3<=n<=12, mismatches={bad}")
    assert not bad


def test_4c_km_c2(criterion):
    """As stated: K(K_m x C_2) = Z_{m+4} + (Z_{m(m+4)})^{m-2} for 3 <= m <= 8."""
    bad = []
    for m in range(3, 9):
        expected = (m + 4,) + (m * (m + 4),) * (m - 2)
        got = critical_group(km_cn(m, 2)).invariant_factors
        if got != expected:
            bad.append((m, expected, got))
    detail = "; ".join(f"m={m}: stated {e}, Laplacian {g}" for m, e, g in bad[:2])
    criterion("4c K_m x C_2", not bad, detail or "all match")
    assert not bad, detail


def test_4d_prisms(criterion):
    bad = [
        n for n in range(3, 21)
        if not groups_isomorphic(critical_group_closed(2, n).group, critical_group(km_cn(2, n)))
    ]
    criterion("4d m=2 closed form", not bad, f"3<=n<=20, mismatches={bad}")
    assert not bad


def test_5_auxiliary_matrices(criterion):
    bad = []
    for m in range(3, 11):
        for n in range(3, 21):
            b, w = matrix_B(m, n), matrix_W(m, n)
            vn = sequence_point(m, n).v
            if matrix_B_snf_closed(m, n) != smith_diagonal(b):
                bad.append(("B snf", m, n))
            if matrix_W_snf_closed(m, n) != smith_diagonal(w):
                bad.append(("W snf", m, n))
            if m * determinant(b) != n * (vn - 2):
                bad.append(("det B", m, n))
            if determinant(w) != vn - 2:
                bad.append(("det W", m, n))
    criterion("5 auxiliary matrices", not bad, f"3<=m<=10, 3<=n<=20, failures={bad}")
    assert not bad


def test_6_block_reduction(criterion):
    bad = [(m, n) for m, n in MAIN_GRID if not verify_block_reduction(m, n)]
    criterion("6 block reduction", not bad, f"3<=m<=6, 3<=n<=10, failures={bad}")
    assert not bad


def test_7_sequence_identities(criterion):
    start = time.perf_counter()
    failures = []
    for m in range(1, 11):
        ref = sequences_by_powers(m, 200)
        for p in range(-200, 201):
            pt = sequence_point(m, p)
            prev, prev2 = sequence_point(m, p - 1), sequence_point(m, p - 2)
            if (pt.u, pt.v) != ref[p]:
                failures.append(("2.1 closed form", m, p))
            if pt.u != (m + 2) * prev.u - prev2.u or pt.v != (m + 2) * prev.v - prev2.v:
                failures.append(("2.1 recurrence", m, p))
            if (pt.u - p) % m or (pt.v - 2) % m:
                failures.append(("2.2", m, p))
            if pt.tau != (m + 2) * prev.tau - prev2.tau - (p - 1):
                failures.append(("2.3", m, p))
            if p < 0:
                continue
            nxt = sequence_point(m, p + 1)
            s = p // 2
            lhs = prev.u * nxt.u - pt.u ** 2 - 1 + (nxt.u - prev.u)
            closed = m * h_g(m, s)[0] ** 2 if p % 2 else m * (m + 4) * sequence_point(m, s).u ** 2
            if not lhs == pt.v - 2 == closed:
                failures.append(("2.4", m, p))
            expected_gcd = h_g(m, s)[0] if p % 2 else gcd(m, 2) * sequence_point(m, s).u
            if not gcd(nxt.u - 1, pt.u) == gcd(pt.u, prev.u + 1) == expected_gcd:
                failures.append(("2.5", m, p))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    criterion("7 sequence identities", ok, f"1<=m<=10, |p|<=200, failures={failures[:5]}, {elapsed:.2f}s (< 10s)")
    assert not failures
    assert elapsed < 10


def test_8_snf_engine(criterion):
    rng = random.Random(20261019)
    count, failures = 1000, []
    for trial in range(count):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = IntMatrix(rows, cols, tuple(rng.randint(-20, 20) for _ in range(rows * cols)))
        dec = smith_normal_form(a)
        if not dec.verify(a):
            failures.append((trial, "witness/chain"))
            continue
        prefix = 1
        for k in range(1, min(rows, cols) + 1):
            prefix *= dec.diag[k - 1]
            if prefix != minors_gcd(a, k):
                failures.append((trial, f"minors k={k}"))
                break
        if rows == cols and abs(determinant(a)) != prod(dec.diag):
            failures.append((trial, "det"))
    criterion("8 SNF engine", not failures, f"{count} random matrices, failures={failures[:5]}")
    assert not failures


def test_9_scale(criterion):
    lap = laplacian(km_cn(8, 12))
    start = time.perf_counter()
    dec = smith_normal_form(lap)
    elapsed = time.perf_counter() - start
    order = prod(d for d in dec.diag if d)
    expected = tree_number_closed(8, 12)
    ok = elapsed < 10 and order == expected and dec.diag.count(0) == 1
    criterion("9 scale K8xC12", ok, f"96x96 SNF with witnesses in {elapsed:.2f}s (< 10s), order matches={order == expected}")
    assert order == expected
    assert elapsed < 10
    assert dec.verify(lap)
