"""Critical groups and spanning-tree counts of connected multigraphs.

The critical group is the torsion part of the cokernel of the Laplacian.
Its order is the number of spanning trees; ``spanning_tree_count`` gets
that number from a cofactor instead, so the two serve as independent checks
on each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable

from .multigraph import Multigraph, is_connected, laplacian
from .zmatrix import delete_row_col, determinant, diagonal_matrix, smith_diagonal


class DisconnectedGraphError(ValueError):
    def __init__(self, message: str = "graph not connected"):
        super().__init__(message)


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group ``Z_{d1} + ... + Z_{dk}`` with ``d1 | d2 | ... | dk``.

    ``invariant_factors`` drops trivial factors; ``raw_factors`` keeps the
    full nonzero diagonal it came from, leading ones included.
    """

    invariant_factors: tuple[int, ...]
    raw_factors: tuple[int, ...] = ()

    def __post_init__(self):
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"canonical factor {d} < 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"{a} does not divide {b}")
        if self.raw_factors and prod(self.raw_factors) != prod(self.invariant_factors):
            raise ValueError("raw factors and invariant factors disagree on the order")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z_{d}" for d in self.invariant_factors)


def canonicalize(factors: Iterable[int]) -> AbelianGroup:
    """Invariant-factor form of ``Z_{f1} + Z_{f2} + ...`` for any positive ``fi``."""
    factors = [int(f) for f in factors]
    for f in factors:
        if f < 1:
            raise ValueError(f"group factors must be positive, got {f}")
    if not factors:
        return AbelianGroup(())
    diag = smith_diagonal(diagonal_matrix(factors))
    return AbelianGroup(tuple(d for d in diag if d != 1), tuple(diag))


def group_order(group: AbelianGroup) -> int:
    return group.order


def groups_isomorphic(a: AbelianGroup, b: AbelianGroup) -> bool:
    return a.invariant_factors == b.invariant_factors


def critical_group(g: Multigraph) -> AbelianGroup:
    """Critical group of a connected multigraph from the SNF of its full Laplacian."""
    if not is_connected(g):
        raise DisconnectedGraphError()
    diag = smith_diagonal(laplacian(g))
    zeros = sum(1 for d in diag if d == 0)
    if zeros != 1:
        # connected graphs have Laplacian rank |V| - 1
        raise AssertionError(f"expected exactly one zero invariant factor, found {zeros}")
    raw = diag[:-1]
    return AbelianGroup(tuple(d for d in raw if d != 1), raw)


def spanning_tree_count(g: Multigraph) -> int:
    """Matrix-Tree theorem: the Laplacian with row and column 0 deleted has det = tree count."""
    if not is_connected(g):
        raise DisconnectedGraphError()
    if g.vertex_count == 1:
        return 1
    return determinant(delete_row_col(laplacian(g), 0, 0))
