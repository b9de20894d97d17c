"""Simple undirected graphs on bitset rows, plus the composition operators.

Vertices are ``0..n-1``; row ``v`` of the adjacency is a Python int whose
bit ``u`` is set iff ``u`` and ``v`` are adjacent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO, Union

__all__ = [
    "Graph",
    "Regular",
    "AlmostRegular",
    "Irregular",
    "RegularityClass",
    "CellSpec",
    "GridSpec",
    "GraphFormatError",
    "make_empty",
    "make_clique",
    "make_cycle",
    "from_edges",
    "complement",
    "disjoint_union",
    "grid_compose",
    "classify_regularity",
    "grid_degree_check",
    "GRID_LINES",
    "write_edgelist",
    "read_edgelist",
    "format_edgelist",
    "parse_edgelist",
]


class GraphFormatError(ValueError):
    """Raised when an edge-list document is malformed."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled by position."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _bits(self.rows[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def make_empty(n: int) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return Graph(n, (0,) * n)


def make_clique(n: int) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edges(n, ((v, (v + 1) % n) for v in range(n)))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.rows)))


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in gs:
        rows.extend(row << offset for row in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


# Cells of the 3x3 grid, numbered row-major from 0.
GRID_LINES = tuple(
    frozenset(j for j in range(9) if j != i and (j // 3 == i // 3 or j % 3 == i % 3))
    for i in range(9)
)


def grid_compose(parts: Sequence[Graph]) -> Graph:
    """Grid graph of nine parts given row-major.

    Each vertex is joined to every vertex of the four cells sharing its grid
    row or column; edges inside a cell are those of the part.
    """
    if len(parts) != 9:
        raise ValueError(f"grid needs 9 parts, got {len(parts)}")
    offsets = [0]
    for g in parts:
        offsets.append(offsets[-1] + g.n)
    blocks = [((1 << g.n) - 1) << offsets[i] for i, g in enumerate(parts)]
    rows: list[int] = []
    for i, g in enumerate(parts):
        cross = 0
        for j in GRID_LINES[i]:
            cross |= blocks[j]
        rows.extend((row << offsets[i]) | cross for row in g.rows)
    return Graph(offsets[-1], tuple(rows))


@dataclass(frozen=True)
class Regular:
    d: int


@dataclass(frozen=True)
class AlmostRegular:
    d: int
    special_vertex: int
    special_degree: int


@dataclass(frozen=True)
class Irregular:
    histogram: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.histogram)


RegularityClass = Union[Regular, AlmostRegular, Irregular]


def classify_regularity(g: Graph) -> RegularityClass:
    degrees = g.degrees()
    hist = Counter(degrees)
    if len(hist) <= 1:
        return Regular(degrees[0] if degrees else 0)
    if len(hist) == 2:
        (a, ca), (b, cb) = sorted(hist.items())
        if abs(a - b) == 1 and min(ca, cb) == 1 and len(degrees) >= 3:
            d, odd = (a, b) if ca > cb else (b, a)
            return AlmostRegular(d, degrees.index(odd), odd)
    return Irregular(tuple(sorted(hist.items())))


@dataclass(frozen=True)
class CellSpec:
    n: int
    d: int
    almost: bool = False

    def __post_init__(self) -> None:
        if self.n < 0 or not 0 <= self.d <= max(self.n - 1, 0):
            raise ValueError(f"bad cell parameters ({self.n}, {self.d})")


@dataclass(frozen=True)
class GridSpec:
    cells: tuple[CellSpec, ...]

    def __post_init__(self) -> None:
        if len(self.cells) != 9:
            raise ValueError("a grid has exactly 9 cells")
        if any(c.almost for c in self.cells[1:]):
            raise ValueError("only the top-left cell may be almost regular")

    @classmethod
    def parse(cls, rows: Sequence[Sequence[tuple]]) -> GridSpec:
        """Build from a 3x3 nested sequence of ``(n, d)`` or ``(n, d, almost)``."""
        cells = [CellSpec(*cell) for row in rows for cell in row]
        return cls(tuple(cells))

    @property
    def n(self) -> int:
        return sum(c.n for c in self.cells)

    def cell_degree(self, i: int) -> int:
        """Nominal degree of a vertex in cell ``i`` of the composed graph."""
        return self.cells[i].d + sum(self.cells[j].n for j in GRID_LINES[i])

    def as_rows(self) -> list[list[tuple[int, int, bool]]]:
        return [
            [(c.n, c.d, c.almost) for c in self.cells[3 * r : 3 * r + 3]]
            for r in range(3)
        ]


def grid_degree_check(spec: GridSpec, target: int) -> bool:
    """True iff every nonempty cell has nominal degree ``target``."""
    return all(
        spec.cell_degree(i) == target for i, c in enumerate(spec.cells) if c.n > 0
    )


def format_edgelist(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            u, v = (int(tok) for tok in ln.split())
        except ValueError as exc:
            raise GraphFormatError(f"bad edge line {ln!r}") from exc
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge {ln!r} violates 0 <= u < v < {n}")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise GraphFormatError("duplicate edge")
    return from_edges(n, edges)


def write_edgelist(g: Graph, fh: TextIO) -> None:
    fh.write(format_edgelist(g))


def read_edgelist(fh: TextIO) -> Graph:
    return parse_edgelist(fh.read())
