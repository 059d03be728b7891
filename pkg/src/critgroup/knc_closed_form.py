"""Closed forms for the critical group and tree number of ``K_m x C_n``.

Everything is driven by three integer sequences attached to ``m``. With
``alpha, beta`` the roots of ``x^2 - (m+2) x + 1``:

    u_p   = (alpha^p - beta^p) / (alpha - beta)
    v_p   = alpha^p + beta^p
    tau_p = (p - u_p) / m

plus ``h_p = u_p + u_{p+1}`` and ``g_p = tau_p + tau_{p+1}``. They are
evaluated by their integer recurrences only, never through floating point.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd, prod

from .critical_group import AbelianGroup, canonicalize
from .zmatrix import IntMatrix, block_diagonal, equivalent, gcd_all


class ClosedFormConsistencyError(AssertionError):
    """A closed formula produced something that cannot be an invariant-factor list."""


@dataclass(frozen=True)
class SequencePoint:
    m: int
    p: int
    u: int
    v: int
    tau: int


@dataclass(frozen=True)
class ClosedFormResult:
    m: int
    n: int
    branch: str
    s: int
    stated_factors: tuple[int, ...]
    group: AbelianGroup
    tree_count: int

    @property
    def parity(self) -> str:
        return "odd" if self.n % 2 else "even"


# ---------------------------------------------------------------------------
# sequences


class _SequenceTable:
    """Read-through cache of (u_p, v_p, tau_p) for p >= 0, one table per m.

    Lists only ever grow, and each extension is published under the lock,
    so readers never see a partially written entry.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._tables: dict[int, tuple[list[int], list[int], list[int]]] = {}

    def get(self, m: int, p: int) -> tuple[int, int, int]:
        table = self._tables.get(m)
        if table is not None and p < len(table[2]):
            u, v, tau = table
            return u[p], v[p], tau[p]
        with self._lock:
            u, v, tau = self._tables.setdefault(m, ([0, 1], [2, m + 2], [0, 0]))
            c = m + 2
            while len(tau) <= p:
                q = len(tau)
                u.append(c * u[q - 1] - u[q - 2])
                v.append(c * v[q - 1] - v[q - 2])
                # tau is appended last: its length is what readers check
                tau.append(c * tau[q - 1] - tau[q - 2] - (q - 1))
            return u[p], v[p], tau[p]


_TABLE = _SequenceTable()


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")


def sequence_point(m: int, p: int) -> SequencePoint:
    """``(u_p, v_p, tau_p)`` for any integer ``p``.

    Negative indices use ``u_{-p} = -u_p`` and ``v_{-p} = v_p`` (both from
    ``alpha * beta = 1``), with ``tau`` recovered as ``(p - u_p) / m``.

    >>> sequence_point(3, 3)
    SequencePoint(m=3, p=3, u=24, v=110, tau=-7)
    """
    _check_m(m)
    if p >= 0:
        u, v, tau = _TABLE.get(m, p)
        return SequencePoint(m, p, u, v, tau)
    u, v, _ = _TABLE.get(m, -p)
    u = -u
    tau, rem = divmod(p - u, m)
    if rem:
        raise ClosedFormConsistencyError(f"u_{p} = {u} is not congruent to {p} mod {m}")
    return SequencePoint(m, p, u, v, tau)


def _u(m: int, p: int) -> int:
    return sequence_point(m, p).u


def _v(m: int, p: int) -> int:
    return sequence_point(m, p).v


def _tau(m: int, p: int) -> int:
    return sequence_point(m, p).tau


def h_g(m: int, p: int) -> tuple[int, int]:
    """``(h_p, g_p) = (u_p + u_{p+1}, tau_p + tau_{p+1})``."""
    a, b = sequence_point(m, p), sequence_point(m, p + 1)
    return a.u + b.u, a.tau + b.tau


# ---------------------------------------------------------------------------
# the 3x3 and 2x2 building blocks


def _check_mn(m: int, n: int, m_min: int = 3, n_min: int = 3) -> None:
    if m < m_min or n < n_min:
        raise ValueError(f"need m >= {m_min} and n >= {n_min}, got m={m}, n={n}")


def _matrix_b(m: int, n: int) -> IntMatrix:
    t0, t1, t2 = _tau(m, n - 1), _tau(m, n), _tau(m, n + 1)
    return IntMatrix.from_rows([
        [n, t0, t1],
        [0, t1 - t0, t2 - t1],
        [0, _u(m, n), _u(m, n + 1) - 1],
    ])


def matrix_B(m: int, n: int) -> IntMatrix:
    _check_mn(m, n)
    return _matrix_b(m, n)


def _b_snf_formula(m: int, n: int) -> tuple[int, int, int]:
    s = n // 2
    if n % 2:
        h, g = h_g(m, s)
        d = gcd(n, g)
        return d, h, n * h // d
    u, tau = _u(m, s), _tau(m, s)
    d1 = gcd(u, 2 * tau)
    d2 = gcd(n, u - 4 * tau)
    return d1, u * d2 // d1, n * (m + 4) * u // d2


def matrix_B_snf_closed(m: int, n: int) -> tuple[int, int, int]:
    """Invariant factors of ``matrix_B(m, n)`` from the parity formulas."""
    _check_mn(m, n)
    return _b_snf_formula(m, n)


def matrix_W(m: int, n: int) -> IntMatrix:
    _check_mn(m, n)
    un = _u(m, n)
    return IntMatrix.from_rows([[_u(m, n - 1) + 1, un], [un, _u(m, n + 1) - 1]])


def matrix_W_snf_closed(m: int, n: int) -> tuple[int, int]:
    _check_mn(m, n)
    s = n // 2
    if n % 2:
        h, _ = h_g(m, s)
        return h, m * h
    u = _u(m, s)
    return gcd(m, 2) * u, m * (m + 4) * u // gcd(m, 2)


# ---------------------------------------------------------------------------
# relation matrix on the 2m generators x_{0,j}, x_{1,j}


def relation_blocks(m: int, n: int) -> tuple[IntMatrix, IntMatrix]:
    """The diagonal block ``E`` and off-diagonal block ``F`` of the relation matrix."""
    _check_m(m)
    if n < 3:
        raise ValueError(f"relation matrix needs n >= 3, got {n}")
    a, b, c = (sequence_point(m, p) for p in (n - 1, n, n + 1))
    e = IntMatrix.from_rows([
        [-a.u - 1 - a.tau, b.u + b.tau],
        [-b.u - b.tau, c.u - 1 + c.tau],
    ])
    f = IntMatrix.from_rows([[-a.tau, b.tau], [-b.tau, c.tau]])
    return e, f


def relation_matrix_A(m: int, n: int) -> IntMatrix:
    """2m x 2m matrix with ``E`` blocks on the diagonal and ``F`` blocks elsewhere.

    Row/column order is ``x_{0,0}, x_{1,0}, x_{0,1}, x_{1,1}, ...``.
    """
    e, f = relation_blocks(m, n)
    size = 2 * m
    rows = [[0] * size for _ in range(size)]
    for bi in range(m):
        for bj in range(m):
            block = e if bi == bj else f
            for r in range(2):
                for c in range(2):
                    rows[2 * bi + r][2 * bj + c] = block[r, c]
    return IntMatrix.from_rows(rows)


def reduced_relation_form(m: int, n: int) -> IntMatrix:
    """``0_1 + B + W + ... + W`` (``m - 2`` copies of ``W``) as one block-diagonal matrix."""
    _check_mn(m, n)
    return block_diagonal([IntMatrix(1, 1, (0,)), matrix_B(m, n)] + [matrix_W(m, n)] * (m - 2))


def reduction_transforms(m: int) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Explicit unimodular matrices behind the block reduction.

    Returns ``(H, H_inv, Q1, Q2)``. Conjugating the relation matrix by ``H``
    leaves ``E + (m-1) F`` and ``F`` in the first block row and ``E - F`` on
    the rest of the diagonal; ``Q1 @ top-left 4x4 @ Q2`` is ``0_1 + B``.
    """
    _check_m(m)

    def scaled_identity_blocks(coef) -> IntMatrix:
        rows = [[0] * (2 * m) for _ in range(2 * m)]
        for bi in range(m):
            for bj in range(m):
                c = coef(bi, bj)
                rows[2 * bi][2 * bj] = rows[2 * bi + 1][2 * bj + 1] = c
        return IntMatrix.from_rows(rows)

    def h(i: int, j: int) -> int:
        if i == 0:
            return int(j == 0)
        if i == 1:
            return -(m - 1) if j == 0 else 1
        return -1 if j == 0 else int(i == j)

    def h_inv(i: int, j: int) -> int:
        if j == 0:
            return 1
        if i == 1:
            return 1 if j == 1 else -1
        return int(i == j)

    q1 = IntMatrix.from_rows([[m, -m, 1, -1], [1, 0, 0, 0], [-1, 1, 0, 0], [0, 0, 0, 1]])
    q2 = IntMatrix.from_rows([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])
    return scaled_identity_blocks(h), scaled_identity_blocks(h_inv), q1, q2


def verify_block_reduction(m: int, n: int) -> bool:
    _check_mn(m, n)
    return equivalent(relation_matrix_A(m, n), reduced_relation_form(m, n))


# ---------------------------------------------------------------------------
# the critical group


def _general_factors(m: int, n: int) -> list[int]:
    """Factor list of the general formula for ``m >= 3``, in its stated order."""
    s = n // 2
    if n % 2:
        h, g = h_g(m, s)
        ng, nh = gcd(n, g), gcd(n, h)
        gamma = h // ng * nh
        phi = n * m * h // nh
        return [ng] + [h] * (m - 1) + [gamma] + [m * h] * (m - 3) + [phi]
    u, tau = _u(m, s), _tau(m, s)
    m2 = gcd(m, 2)
    d_b = gcd(u, 2 * tau)
    d_n = gcd(n, u - 4 * tau)
    d_z = gcd_all((n, u, 4 * tau))
    d_x = gcd_all((m * n, (m + 4) * u, 2 * n))
    zeta = u * d_z // d_b
    eta = u * m2 * d_n // d_z
    rho = (m + 4) * u * d_x // (d_n * m2)
    chi = m * (m + 4) * u // m2
    xi = n * m * (m + 4) * u // d_x
    return [d_b, zeta] + [m2 * u] * (m - 3) + [eta, rho] + [chi] * (m - 3) + [xi]


def _prism_factors(n: int) -> list[int]:
    """``m = 2``: the three invariant factors of B after the parity simplifications."""
    s = n // 2
    if n % 2:
        h, _ = h_g(2, s)
        d = gcd(n, h)
        return [d, h, n * h // d]
    u = _u(2, s)
    d = gcd(u, n)
    first, second = (d, u) if s % 2 else (d // 2, 2 * u)
    return [first, second, 6 * n * u // d]


def quoted_km_c2_group(m: int) -> AbelianGroup:
    """The commonly quoted form ``Z_{m+4} + (Z_{m(m+4)})^{m-2}`` for ``K_m x C_2``.

    Kept for reference only: it is half the true order (the Laplacian of
    ``K_m x C_2`` has ``2 m^{m-2} (m+4)^{m-1}`` spanning trees), because the
    reduction behind it scales one relation by 2. ``critical_group_closed``
    handles ``n = 2`` with the general even-``n`` formulas instead, which do
    match the Laplacian.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    return canonicalize([m + 4] + [m * (m + 4)] * (m - 2))


def critical_group_closed(m: int, n: int) -> ClosedFormResult:
    """Critical group of ``K_m x C_n`` without touching the Laplacian.

    Branches, in order: ``n = 1`` (the complete graph), ``m = 1`` (the
    cycle), ``m = 2`` (prism graphs) and the general ``m >= 3`` formulas,
    which also cover ``n = 2``. The stated factor list must already be a
    divisibility chain and multiply to the closed tree number; anything else
    raises ``ClosedFormConsistencyError``.
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m}, n={n}")
    s = n // 2
    if n == 1:
        branch, factors = "complete", [m] * (m - 2)
    elif m == 1:
        branch, factors = "cycle", [n]
    elif m == 2:
        branch, factors = "prism", _prism_factors(n)
        if n >= 3 and tuple(factors) != _b_snf_formula(2, n):
            raise ClosedFormConsistencyError(
                f"prism simplification {factors} disagrees with B formulas "
                f"{_b_snf_formula(2, n)} at n={n}"
            )
    else:
        branch = "odd" if n % 2 else "even"
        factors = _general_factors(m, n)

    for a, b in zip(factors, factors[1:]):
        if a <= 0 or b % a:
            raise ClosedFormConsistencyError(
                f"factors {factors} for m={m}, n={n} are not a divisibility chain"
            )
    order = prod(factors)
    expected = tree_number_closed(m, n)
    if order != expected:
        raise ClosedFormConsistencyError(
            f"factor product {order} != tree number {expected} for m={m}, n={n}"
        )
    return ClosedFormResult(
        m=m, n=n, branch=branch, s=s,
        stated_factors=tuple(factors),
        group=canonicalize(factors),
        tree_count=order,
    )


def tree_number_closed(m: int, n: int) -> int:
    """Spanning trees of ``K_m x C_n``: ``n (v_n - 2)^(m-1) / m``, computed exactly."""
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m}, n={n}")
    q, r = divmod(n * (_v(m, n) - 2) ** (m - 1), m)
    if r:
        raise ClosedFormConsistencyError(f"tree number for m={m}, n={n} is not an integer")
    return q
