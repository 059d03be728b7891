"""Finite loop-free multigraphs, the graph families used here, and Laplacians.

Vertices are ``0 .. vertex_count - 1``. Edges live in ``edge_mult``, keyed
by ``(u, v)`` with ``u < v``; an absent pair has multiplicity zero.

Two conventions every other module relies on:

* ``cycle_graph(2)`` is a *double* edge, so that ``K_m x C_2`` is 4-regular
  in the layer direction like every longer cycle. ``cycle_graph(1)`` is a
  single vertex with no loop.
* In ``K_m x C_n`` the vertex in layer ``i`` (position on the cycle) and
  position ``j`` (vertex of ``K_m``) has flat index ``i * m + j``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .zmatrix import IntMatrix


class EdgeListParseError(ValueError):
    """Malformed edge-list text. ``line`` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edge_mult: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        clean = {}
        for (u, v), k in self.edge_mult.items():
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if k < 1:
                raise ValueError(f"edge ({u}, {v}) has multiplicity {k}")
            key = (u, v) if u < v else (v, u)
            if key in clean:
                raise ValueError(f"edge {key} listed twice")
            clean[key] = int(k)
        object.__setattr__(self, "edge_mult", dict(sorted(clean.items())))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Multigraph:
        """Build from an edge iterable; repeated pairs add multiplicity."""
        mult: dict[tuple[int, int], int] = {}
        for u, v in edges:
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
        return cls(vertex_count, mult)

    def multiplicity(self, u: int, v: int) -> int:
        return self.edge_mult.get((u, v) if u < v else (v, u), 0)

    def degree(self, u: int) -> int:
        return sum(k for (a, b), k in self.edge_mult.items() if u in (a, b))

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for (u, v), k in self.edge_mult.items():
            deg[u] += k
            deg[v] += k
        return deg

    @property
    def edge_count(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(self.edge_mult.values())

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edge_mult:
            adj[u].append(v)
            adj[v].append(u)
        return adj


class VertexLabel(NamedTuple):
    """Vertex ``v_{i,j}`` of ``K_m x C_n``: layer ``i`` in Z_n, position ``j`` in Z_m."""

    layer: int
    position: int

    def flat(self, m: int) -> int:
        return self.layer * m + self.position

    @classmethod
    def from_flat(cls, index: int, m: int) -> VertexLabel:
        return cls(*divmod(index, m))


def _require_positive(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value}")


def complete_graph(m: int) -> Multigraph:
    _require_positive("m", m)
    return Multigraph(m, {(u, v): 1 for u in range(m) for v in range(u + 1, m)})


def cycle_graph(n: int) -> Multigraph:
    """The cycle ``C_n``; ``C_2`` is a double edge and ``C_1`` has no edges."""
    _require_positive("n", n)
    if n == 1:
        return Multigraph(1)
    if n == 2:
        return Multigraph(2, {(0, 1): 2})
    return Multigraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Multigraph:
    _require_positive("n", n)
    return Multigraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cartesian_product(g1: Multigraph, g2: Multigraph) -> Multigraph:
    """``g1 x g2``; vertex ``(u, v)`` gets flat index ``v * |V1| + u``.

    Each vertex of ``g2`` becomes a copy of ``g1`` and each edge of ``g2``
    joins corresponding vertices of two copies, keeping its multiplicity.
    """
    n1, n2 = g1.vertex_count, g2.vertex_count
    if n1 == 0 or n2 == 0:
        raise ValueError("cartesian product needs nonempty factors")
    mult: dict[tuple[int, int], int] = {}
    for v in range(n2):
        for (a, b), k in g1.edge_mult.items():
            mult[(v * n1 + a, v * n1 + b)] = k
    for (a, b), k in g2.edge_mult.items():
        for u in range(n1):
            mult[(a * n1 + u, b * n1 + u)] = k
    return Multigraph(n1 * n2, mult)


def km_cn(m: int, n: int) -> Multigraph:
    """``K_m x C_n`` built directly: ``v_{i,j}`` joins its layer-mates and ``v_{i±1,j}``."""
    _require_positive("m", m)
    _require_positive("n", n)
    mult: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(m):
            for k in range(j + 1, m):
                mult[(i * m + j, i * m + k)] = 1
    if n == 2:
        for j in range(m):
            mult[(j, m + j)] = 2
    elif n >= 3:
        for i in range(n):
            nxt = (i + 1) % n
            for j in range(m):
                a, b = i * m + j, nxt * m + j
                mult[(a, b) if a < b else (b, a)] = 1
    return Multigraph(m * n, mult)


def laplacian(g: Multigraph) -> IntMatrix:
    n = g.vertex_count
    rows = [[0] * n for _ in range(n)]
    for (u, v), k in g.edge_mult.items():
        rows[u][v] -= k
        rows[v][u] -= k
        rows[u][u] += k
        rows[v][v] += k
    return IntMatrix(n, n, tuple(x for row in rows for x in row))


def is_connected(g: Multigraph) -> bool:
    if g.vertex_count == 0:
        raise ValueError("connectivity of the empty graph is undefined")
    adj = g.neighbours()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.vertex_count


# ---------------------------------------------------------------------------
# edge-list text format


def parse_edge_list(text: str) -> Multigraph:
    """Read the edge-list format.

    First non-blank line: vertex count. Each further line is ``u v`` or
    ``u v mult``; ``#`` starts a comment. Repeated pairs accumulate.
    """
    vertex_count = None
    mult: dict[tuple[int, int], int] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError:
            raise EdgeListParseError(line_no, f"non-integer token in {line!r}") from None
        if vertex_count is None:
            if len(values) != 1 or values[0] < 0:
                raise EdgeListParseError(line_no, "expected a vertex count")
            vertex_count = values[0]
            continue
        if len(values) not in (2, 3):
            raise EdgeListParseError(line_no, "expected 'u v' or 'u v mult'")
        u, v = values[0], values[1]
        k = values[2] if len(values) == 3 else 1
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise EdgeListParseError(line_no, f"vertex index out of range 0..{vertex_count - 1}")
        if u == v:
            raise EdgeListParseError(line_no, f"self-loop at vertex {u}")
        if k < 1:
            raise EdgeListParseError(line_no, "multiplicity must be at least 1")
        key = (u, v) if u < v else (v, u)
        mult[key] = mult.get(key, 0) + k
    if vertex_count is None:
        raise EdgeListParseError(1, "missing vertex count")
    return Multigraph(vertex_count, mult)


def to_edge_list(g: Multigraph) -> str:
    lines = [str(g.vertex_count)]
    for (u, v), k in g.edge_mult.items():
        lines.append(f"{u} {v}" if k == 1 else f"{u} {v} {k}")
    return "\n".join(lines) + "\n"
