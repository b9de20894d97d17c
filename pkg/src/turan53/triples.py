"""Triple systems, counting bounds, and the PG(2,3) collinear-triple system."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, TextIO

from .graph import Graph

__all__ = [
    "TripleSystem",
    "TripleFormatError",
    "from_graph",
    "goodman_M",
    "pigeonhole_upper",
    "conditional_lower",
    "known_T",
    "KNOWN_T",
    "BEST_UPPER_EXCEPTIONS",
    "pg23_points",
    "pg23_lines",
    "pg23_system",
    "has_43_config",
    "BoundsReport",
    "bounds_report",
    "format_triples",
    "parse_triples",
    "write_triples",
    "read_triples",
]

Triple = tuple[int, int, int]

# Exact values of T(n,5,3) for 5 <= n <= 17.
KNOWN_T = {
    5: 1, 6: 2, 7: 5, 8: 8, 9: 12, 10: 20, 11: 29, 12: 40,
    13: 52, 14: 70, 15: 89, 16: 112, 17: 136,
}

# n for which the best known upper bound is M(n) + 1.
BEST_UPPER_EXCEPTIONS = frozenset({5, 7, 11, 15, 27})


class TripleFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TripleSystem:
    n: int
    triples: tuple[Triple, ...]

    def __post_init__(self) -> None:
        seen = set()
        for t in self.triples:
            if len(t) != 3 or not (0 <= t[0] < t[1] < t[2] < self.n):
                raise ValueError(f"bad triple {t} for base size {self.n}")
            if t in seen:
                raise ValueError(f"duplicate triple {t}")
            seen.add(t)
        if list(self.triples) != sorted(self.triples):
            raise ValueError("triples must be sorted lexicographically")

    @classmethod
    def of(cls, n: int, triples: Iterable[Iterable[int]]) -> TripleSystem:
        """Normalize arbitrary 3-subsets into a sorted system."""
        norm = {tuple(sorted(t)) for t in triples}
        return cls(n, tuple(sorted(norm)))  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.triples)

    def pair_masks(self) -> list[list[int]]:
        """``masks[a][b]`` has bit c set iff {a, b, c} is a triple."""
        masks = [[0] * self.n for _ in range(self.n)]
        for a, b, c in self.triples:
            masks[a][b] |= 1 << c
            masks[b][a] |= 1 << c
            masks[a][c] |= 1 << b
            masks[c][a] |= 1 << b
            masks[b][c] |= 1 << a
            masks[c][b] |= 1 << a
        return masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_graph(g: Graph) -> TripleSystem:
    """Triangles and anti-triangles of ``g``."""
    n = g.n
    full = (1 << n) - 1
    rows = g.rows
    out: list[Triple] = []
    for u in range(n):
        for v in range(u + 1, n):
            above = full >> (v + 1) << (v + 1)
            if rows[u] >> v & 1:
                common = rows[u] & rows[v] & above
            else:
                common = ~(rows[u] | rows[v]) & above
            out.extend((u, v, w) for w in _bits(common))
    return TripleSystem(n, tuple(out))


def goodman_M(n: int) -> int:
    """Minimum number of triangles plus anti-triangles over n-vertex graphs."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    m, odd = divmod(n, 2)
    if not odd:
        return 2 * comb(m, 3)
    if m % 2 == 0:
        return (2 * m + 1) * m * (m - 2) // 6
    return (2 * m - 3) * (m - 1) * (m + 1) // 6


def pigeonhole_upper(n: int) -> int:
    """All triples inside each half of a near-equal bipartition."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return comb((n + 1) // 2, 3) + comb(n // 2, 3)


def conditional_lower(n: int) -> int:
    """ceil(m(m-2)(2m+1)/6) for n = 2m+1.

    A lower bound on T(n,5,3) only if T(2m,5,3) = 2*C(m,3) holds.
    """
    if n % 2 == 0 or n < 5:
        raise ValueError(f"defined for odd n >= 5, got {n}")
    m = (n - 1) // 2
    return -(-(m * (m - 2) * (2 * m + 1)) // 6)


def known_T(n: int) -> int:
    try:
        return KNOWN_T[n]
    except KeyError:
        raise ValueError(f"T(n,5,3) is tabulated only for 5 <= n <= 17, got {n}") from None


def pg23_points() -> list[tuple[int, int, int]]:
    """Points of PG(2,3) as normalized vectors over GF(3).

    A vector is normalized when its first nonzero coordinate is 1; points are
    listed in lexicographic order of their coordinates, so index 0 is (0,0,1)
    and index 12 is (1,2,2).
    """
    return [
        v for v in itertools.product(range(3), repeat=3)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]


def pg23_lines() -> list[tuple[int, ...]]:
    """Lines as sorted point-index 4-tuples; line k is orthogonal to point k."""
    pts = pg23_points()
    return [
        tuple(i for i, p in enumerate(pts) if sum(a * b for a, b in zip(p, q)) % 3 == 0)
        for q in pts
    ]


def pg23_system() -> TripleSystem:
    """The 52 collinear triples of PG(2,3)."""
    return TripleSystem.of(13, (t for line in pg23_lines() for t in itertools.combinations(line, 3)))


def has_43_config(s: TripleSystem) -> Optional[tuple[int, int, int, int]]:
    """Lexicographically smallest 4-set containing exactly three triples of ``s``."""
    counts: Counter[tuple[int, ...]] = Counter()
    for t in s.triples:
        members = set(t)
        for x in range(s.n):
            if x not in members:
                counts[tuple(sorted((*t, x)))] += 1
    hits = [q for q, c in counts.items() if c == 3]
    return min(hits) if hits else None  # type: ignore[return-value]


@dataclass(frozen=True)
class BoundsReport:
    n: int
    pigeonhole_upper: int
    conditional_lower: Optional[int]
    goodman_M: int
    known_T: Optional[int]
    best_upper: int
    best_upper_source: str

    def render(self) -> str:
        def show(v: object) -> str:
            return "-" if v is None else str(v)

        lines = [
            f"n: {self.n}",
            f"pigeonhole_upper: {self.pigeonhole_upper}",
            f"conditional_lower: {show(self.conditional_lower)}",
            "conditional_lower_assumes: T(2m,5,3) = 2*C(m,3)",
            f"goodman_M: {self.goodman_M}",
            f"known_T: {show(self.known_T)}",
            f"best_upper: {self.best_upper}",
            f"best_upper_source: {self.best_upper_source}",
        ]
        return "\n".join(lines) + "\n"


def bounds_report(n: int) -> BoundsReport:
    from .constructions import is_supported

    if n < 5:
        raise ValueError(f"bounds are reported for n >= 5, got {n}")
    M = goodman_M(n)
    upper = pigeonhole_upper(n)
    if n in BEST_UPPER_EXCEPTIONS:
        best, source = M + 1, "M(n)+1"
    elif n % 2 == 0:
        best, source = upper, "pigeonhole"
    elif is_supported(n):
        best, source = M, "construction"
    elif n in KNOWN_T:
        best, source = KNOWN_T[n], "known_T"
    else:
        best, source = upper, "pigeonhole"
    return BoundsReport(
        n=n,
        pigeonhole_upper=upper,
        conditional_lower=conditional_lower(n) if n % 2 else None,
        goodman_M=M,
        known_T=KNOWN_T.get(n),
        best_upper=best,
        best_upper_source=source,
    )


def format_triples(s: TripleSystem) -> str:
    lines = [f"{s.n} {len(s.triples)}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in s.triples)
    return "\n".join(lines) + "\n"


def parse_triples(text: str) -> TripleSystem:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TripleFormatError("empty triple file")
    try:
        n, t = (int(tok) for tok in lines[0].split())
        triples = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise TripleFormatError(str(exc)) from exc
    if len(triples) != t:
        raise TripleFormatError(f"header announces {t} triples, found {len(triples)}")
    try:
        return TripleSystem(n, tuple(triples))  # type: ignore[arg-type]
    except ValueError as exc:
        raise TripleFormatError(str(exc)) from exc


def write_triples(s: TripleSystem, fh: TextIO) -> None:
    fh.write(format_triples(s))


def read_triples(fh: TextIO) -> TripleSystem:
    return parse_triples(fh.read())
