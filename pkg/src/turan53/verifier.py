"""Exact checks: induced 5-cycles, triangle counts, Turán validity, certificates."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Optional

import numpy as np

from . import __version__
from .constructions import ConstructionTrace
from .graph import AlmostRegular, Graph, Irregular, Regular, RegularityClass, classify_regularity
from .triples import TripleSystem, from_graph, goodman_M

__all__ = [
    "find_induced_c5",
    "c5_witnesses_from",
    "is_induced_c5",
    "count_triangles_anti",
    "is_turan_system",
    "Certificate",
    "certify",
    "expected_regularity_ok",
    "GoodmanSummary",
    "goodman_exhaustive_check",
    "DIRECT_TURAN_LIMIT",
]

# Largest n for which certify() enumerates 5-subsets directly.
DIRECT_TURAN_LIMIT = 60


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_induced_c5(g: Graph, vertices) -> bool:
    if len(set(vertices)) != 5:
        return False
    # the only 2-regular simple graph on 5 vertices is C5
    return g.induced(sorted(vertices)).degrees() == [2] * 5


def c5_witnesses_from(g: Graph, a: int, first_only: bool = False) -> list[tuple[int, ...]]:
    """Induced 5-cycles whose smallest vertex is ``a``, as sorted 5-tuples.

    The cycle is a-b-c-d-e-a with b < e both neighbours of a; c must be a
    neighbour of b only, d a neighbour of e only, and c ~ d.
    """
    rows = g.rows
    above = ((1 << g.n) - 1) >> (a + 1) << (a + 1)
    na = rows[a]
    far = above & ~na
    found: list[tuple[int, ...]] = []
    nbrs = list(_bits(na & above))
    for i, b in enumerate(nbrs):
        rb = rows[b]
        for e in nbrs[i + 1 :]:
            if rb >> e & 1:
                continue
            re_ = rows[e]
            cs = rb & far & ~re_
            if not cs:
                continue
            ds = re_ & far & ~rb
            if not ds:
                continue
            for c in _bits(cs):
                hit = rows[c] & ds
                for d in _bits(hit):
                    found.append(tuple(sorted((a, b, c, d, e))))
                    if first_only:
                        return found
    return found


def find_induced_c5(g: Graph) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest vertex 5-set inducing a 5-cycle, or None."""
    for a in range(g.n - 4):
        if c5_witnesses_from(g, a, first_only=True):
            return min(c5_witnesses_from(g, a))
    return None


def count_triangles_anti(g: Graph) -> tuple[int, int]:
    n = g.n
    full = (1 << n) - 1
    rows = g.rows
    tri = anti = 0
    for u in range(n):
        ru = rows[u]
        cu = full & ~ru
        for v in range(u + 1, n):
            above = full >> (v + 1) << (v + 1)
            if ru >> v & 1:
                tri += (ru & rows[v] & above).bit_count()
            else:
                anti += (cu & ~rows[v] & above).bit_count()
    return tri, anti


def is_turan_system(s: TripleSystem, k: int = 5) -> Optional[tuple[int, ...]]:
    """None if every k-subset contains a triple of ``s``, else an uncovered k-subset.

    Enumerates subsets in lexicographic order, pruning any prefix that
    already contains a triple, so the first uncovered k-subset found is the
    lexicographically smallest one.
    """
    n = s.n
    if k < 3 or n < k:
        raise ValueError(f"need base size >= k >= 3, got n={n}, k={k}")
    masks = s.pair_masks()
    full = (1 << n) - 1

    def extend(chosen: list[int], blocked: int) -> Optional[tuple[int, ...]]:
        if len(chosen) == k:
            return tuple(chosen)
        last = chosen[-1] if chosen else -1
        need = k - len(chosen)
        cand = full >> (last + 1) << (last + 1) & ~blocked
        for v in _bits(cand):
            if n - v < need:
                break
            add = 0
            for u in chosen:
                add |= masks[u][v]
            chosen.append(v)
            hit = extend(chosen, blocked | add)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    return extend([], 0)


def expected_regularity_ok(n: int, cls: RegularityClass) -> bool:
    """Whether ``cls`` is the degree profile of a graph attaining M(n)."""
    if n % 2 == 0:
        if isinstance(cls, Regular):
            present = {cls.d}
        elif isinstance(cls, AlmostRegular):
            present = {cls.d, cls.special_degree}
        else:
            present = set(cls.as_dict())
        return present <= {n // 2, n // 2 - 1}
    d = (n - 1) // 2
    if n % 4 == 1:
        return cls == Regular(d)
    return isinstance(cls, AlmostRegular) and cls.d == d


def regularity_to_dict(cls: RegularityClass) -> dict[str, Any]:
    if isinstance(cls, Regular):
        return {"kind": "regular", "d": cls.d}
    if isinstance(cls, AlmostRegular):
        return {
            "kind": "almost_regular",
            "d": cls.d,
            "special_vertex": cls.special_vertex,
            "special_degree": cls.special_degree,
        }
    return {"kind": "irregular", "histogram": {str(k): v for k, v in cls.histogram}}


@dataclass
class Certificate:
    n: int
    trace_rule: Optional[str]
    trace_digest: Optional[str]
    regularity: dict[str, Any]
    regularity_matches_extremal: bool
    induced_c5: Optional[list[int]]
    triangle_count: int
    anti_triangle_count: int
    total: int
    goodman_M: int
    delta: int
    turan_valid: bool
    turan_witness: Optional[list[int]]
    turan_route: str
    tool_version: str = __version__
    timing: dict[str, float] = field(default_factory=dict)

    def claims(self) -> dict[str, bool]:
        return {
            "c5": self.induced_c5 is None,
            "regularity": self.regularity_matches_extremal,
            "goodman": self.delta == 0,
            "turan": self.turan_valid,
        }

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = asdict(self)
        if not timing:
            out.pop("timing")
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        return cls(**json.loads(text))


def certify(g: Graph, trace: Optional[ConstructionTrace] = None) -> Certificate:
    """Run every check on ``g``; failures are recorded, never raised."""
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    cls = classify_regularity(g)
    witness = find_induced_c5(g)
    t1 = time.perf_counter()
    timing["c5_seconds"] = round(t1 - t0, 6)
    tri, anti = count_triangles_anti(g)
    t2 = time.perf_counter()
    timing["count_seconds"] = round(t2 - t1, 6)
    M = goodman_M(g.n)
    if g.n < 5:
        turan_witness, route = None, "trivial"
    elif g.n <= DIRECT_TURAN_LIMIT:
        turan_witness, route = is_turan_system(from_graph(g), 5), "direct"
    else:
        turan_witness, route = witness, "induced_c5"
    timing["turan_seconds"] = round(time.perf_counter() - t2, 6)
    return Certificate(
        n=g.n,
        trace_rule=trace.rule if trace else None,
        trace_digest=trace.digest() if trace else None,
        regularity=regularity_to_dict(cls),
        regularity_matches_extremal=expected_regularity_ok(g.n, cls),
        induced_c5=list(witness) if witness else None,
        triangle_count=tri,
        anti_triangle_count=anti,
        total=tri + anti,
        goodman_M=M,
        delta=tri + anti - M,
        turan_valid=turan_witness is None,
        turan_witness=list(turan_witness) if turan_witness else None,
        turan_route=route,
        timing=timing,
    )


@dataclass
class GoodmanSummary:
    n: int
    graphs: int
    minimum: int
    minimizers: int
    profiles: dict[tuple[int, ...], int]
    profiles_ok: bool
    converse_ok: bool

    @property
    def ok(self) -> bool:
        return self.minimum == goodman_M(self.n) and self.profiles_ok and self.converse_ok


def _profile_ok(n: int, degrees: tuple[int, ...]) -> bool:
    hist = Counter(degrees)
    if n % 2 == 0:
        return set(hist) <= {n // 2, n // 2 - 1}
    d = (n - 1) // 2
    if n % 4 == 1:
        return set(hist) == {d}
    odd = [k for k in hist if k != d]
    return hist[d] == n - 1 and len(odd) == 1 and abs(odd[0] - d) == 1


def goodman_exhaustive_check(n: int) -> GoodmanSummary:
    """Minimum triangle+anti-triangle count over every labelled graph on n <= 7 vertices.

    Also checks that the minimizers are exactly the graphs whose degree
    sequences match the extremal characterization.
    """
    if not 1 <= n <= 7:
        raise ValueError(f"exhaustive check supports 1 <= n <= 7, got {n}")
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    codes = np.arange(1 << len(pairs), dtype=np.uint32)
    edge = [((codes >> i) & 1).astype(np.uint8) for i in range(len(pairs))]
    total = np.zeros(codes.shape, dtype=np.int16)
    for a, b, c in combinations(range(n), 3):
        s = edge[index[a, b]] + edge[index[a, c]] + edge[index[b, c]]
        total += (s == 0) | (s == 3)
    degrees = np.zeros((n, codes.size), dtype=np.uint8)
    for (a, b), i in index.items():
        degrees[a] += edge[i]
        degrees[b] += edge[i]
    minimum = int(total.min())
    is_min = total == minimum
    sorted_deg = np.sort(degrees, axis=0)
    profiles: Counter[tuple[int, ...]] = Counter()
    keys, counts = np.unique(sorted_deg[:, is_min].T, axis=0, return_counts=True)
    for key, count in zip(keys, counts):
        profiles[tuple(int(x) for x in key)] = int(count)
    profiles_ok = all(_profile_ok(n, p) for p in profiles)
    all_keys = np.unique(sorted_deg.T, axis=0)
    good = [tuple(int(x) for x in k) for k in all_keys if _profile_ok(n, tuple(int(x) for x in k))]
    matches = np.zeros(codes.size, dtype=bool)
    for key in good:
        matches |= np.all(sorted_deg == np.array(key, dtype=np.uint8)[:, None], axis=0)
    converse_ok = bool(np.all(is_min[matches]))
    return GoodmanSummary(
        n=n,
        graphs=int(codes.size),
        minimum=minimum,
        minimizers=int(is_min.sum()),
        profiles=dict(profiles),
        profiles_ok=profiles_ok,
        converse_ok=converse_ok,
    )


def naive_counts(g: Graph) -> tuple[int, int]:
    """All-triples scan; used as an independent oracle."""
    tri = anti = 0
    for a, b, c in combinations(range(g.n), 3):
        e = g.adjacent(a, b) + g.adjacent(a, c) + g.adjacent(b, c)
        tri += e == 3
        anti += e == 0
    return tri, anti


def naive_turan_check(s: TripleSystem, k: int = 5) -> Optional[tuple[int, ...]]:
    triples = set(s.triples)
    for sub in combinations(range(s.n), k):
        if not any(t in triples for t in combinations(sub, 3)):
            return sub
    return None


def brute_find_c5(g: Graph) -> Optional[tuple[int, ...]]:
    for sub in combinations(range(g.n), 5):
        if is_induced_c5(g, sub):
            return sub
    return None

