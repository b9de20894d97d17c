"""Regular and almost-regular graphs without induced 5-cycles.

Every constructor returns ``(graph, trace)``; the trace records which rule
produced each subgraph so any piece can be rebuilt on its own.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .graph import (
    Graph,
    GridSpec,
    complement,
    disjoint_union,
    from_edges,
    grid_compose,
    make_clique,
    make_empty,
)
from .tables import (
    ALMOST_CASES,
    ALMOST_SPECIAL,
    M_CONG2_CASE1,
    M_CONG2_CASES,
    M_DIV4,
    N27_GRID,
    GridTable,
)

__all__ = [
    "ConstructionError",
    "ConstructionTrace",
    "CellResolution",
    "RULES",
    "reg_even",
    "reg_odd",
    "m_div4",
    "m_cong2_mod4",
    "make_H",
    "almost_reg",
    "almost_main",
    "n27",
    "resolve_cell",
    "build_cell",
    "build_grid",
    "build",
    "is_supported",
    "rebuild",
    "m_cong2_table",
    "almost_table",
]

RULES = (
    "reg_even", "reg_odd", "m_div4", "m_cong2_mod4", "almost_reg", "almost_main",
    "n27", "clique", "empty", "H_graph", "special_table", "grid", "union", "complement",
)
LEAF_RULES = frozenset({"clique", "empty", "H_graph", "special_table"})


class ConstructionError(ValueError):
    """Raised when no construction exists for the requested parameters."""


@dataclass(frozen=True)
class ConstructionTrace:
    rule: str
    params: dict[str, Any] = field(default_factory=dict)
    children: tuple[ConstructionTrace, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"rule": self.rule, "params": dict(self.params)}
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ConstructionTrace:
        return cls(
            data["rule"],
            dict(data.get("params", {})),
            tuple(cls.from_dict(c) for c in data.get("children", ())),
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> ConstructionTrace:
        return cls.from_dict(json.loads(text))

    def digest(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def _trace(rule: str, children: tuple[ConstructionTrace, ...] = (), **params: Any):
    return ConstructionTrace(rule, params, children)


def _empty(n: int) -> tuple[Graph, ConstructionTrace]:
    return make_empty(n), _trace("empty", n=n, d=0)


def _clique(n: int) -> tuple[Graph, ConstructionTrace]:
    return make_clique(n), _trace("clique", n=n, d=max(n - 1, 0))


def _union(*parts: tuple[Graph, ConstructionTrace], **params: Any):
    g = disjoint_union([p[0] for p in parts])
    return g, _trace("union", tuple(p[1] for p in parts), n=g.n, **params)


def _complement(part: tuple[Graph, ConstructionTrace], **params: Any):
    g = complement(part[0])
    return g, _trace("complement", (part[1],), n=g.n, **params)


def reg_even(n: int, d: int) -> tuple[Graph, ConstructionTrace]:
    """d-regular graph on an even number of vertices."""
    if n % 2 or n < 0 or not 0 <= d <= max(n - 1, 0):
        raise ConstructionError(f"reg_even needs even n and 0 <= d <= n-1, got ({n}, {d})")
    if n == 0:
        return make_empty(0), _trace("reg_even", (_empty(0)[1],), n=0, d=0)
    m = n // 2
    if d == m - 1:
        inner = _union(_clique(m), _clique(m))
    elif d <= m - 2:
        r = d + 1 if (d + 1) % 2 == 0 else d + 2
        inner = _union(reg_even(r, d), reg_even(n - r, d))
    else:
        inner = _complement(reg_even(n, n - 1 - d))
    return inner[0], _trace("reg_even", (inner[1],), n=n, d=d)


def reg_odd(n: int, d: int) -> tuple[Graph, ConstructionTrace]:
    """d-regular graph (d even, d != (n-1)/2) on an odd number of vertices."""
    if n % 2 == 0 or d % 2 or not 0 <= d <= n - 1 or 2 * d == n - 1:
        raise ConstructionError(
            f"reg_odd needs odd n, even d in [0, n-1], d != (n-1)/2; got ({n}, {d})"
        )
    m = (n - 1) // 2
    if d <= m - 1:
        inner = _union(reg_even(n - d - 1, d), _clique(d + 1))
    else:
        inner = _complement(reg_odd(n, n - 1 - d))
    return inner[0], _trace("reg_odd", (inner[1],), n=n, d=d)


def make_H(d: int) -> Graph:
    """K_{d+2} minus the disjoint edges {0,1}, {2,3}, ..., {d-1,d}."""
    if d < 1 or d % 2 == 0:
        raise ConstructionError(f"make_H needs odd d >= 1, got {d}")
    rows = list(make_clique(d + 2).rows)
    for u in range(0, d, 2):
        rows[u] &= ~(1 << (u + 1))
        rows[u + 1] &= ~(1 << u)
    return Graph(d + 2, tuple(rows))


def almost_reg(n: int, d: int) -> tuple[Graph, ConstructionTrace]:
    """Almost d-regular graph (d odd, d != (n-1)/2) for n = 3 mod 4."""
    if n % 4 != 3 or d % 2 == 0 or not 1 <= d <= n - 1 or 2 * d == n - 1:
        raise ConstructionError(
            f"almost_reg needs n = 3 mod 4, odd d in [1, n-1], d != (n-1)/2; got ({n}, {d})"
        )
    m = (n - 3) // 4
    if d <= 2 * m - 1:
        h = make_H(d), _trace("H_graph", n=d + 2, d=d)
        inner = _union(reg_even(n - d - 2, d), h)
    else:
        inner = _complement(almost_reg(n, n - 1 - d))
    return inner[0], _trace("almost_reg", (inner[1],), n=n, d=d)


def _special_3_1() -> tuple[Graph, ConstructionTrace]:
    return from_edges(3, [(0, 1)]), _trace("special_table", n=3, d=1)


@dataclass(frozen=True)
class CellResolution:
    n: int
    d: int
    almost: bool
    rule: str


def resolve_cell(n: int, d: int, almost: bool = False) -> CellResolution:
    """Pick the constructor for one grid cell.

    Cells of degree 0 or n-1 resolve to the empty graph or the clique
    directly, which also covers cells such as (1, 0) and (3, 2).
    """
    def res(rule: str) -> CellResolution:
        return CellResolution(n, d, almost, rule)

    if n < 0 or not 0 <= d <= max(n - 1, 0):
        raise ConstructionError(f"cell ({n}, {d}) out of range")
    if almost:
        if (n, d) == (3, 1):
            return res("special_table")
        if n % 4 != 3 or d % 2 == 0:
            raise ConstructionError(f"no almost-regular constructor for (({n}, {d}))")
        if 2 * d != n - 1:
            return res("almost_reg")
        if d >= 9 and d != 13:
            return res("almost_main")
        raise ConstructionError(f"no almost-regular constructor for (({n}, {d}))")
    if d == 0:
        return res("empty")
    if d == n - 1:
        return res("clique")
    if n % 2 == 0:
        return res("reg_even")
    if d % 2:
        raise ConstructionError(f"no regular graph with odd n={n} and odd d={d}")
    if 2 * d != n - 1:
        return res("reg_odd")
    if d % 4 == 0:
        return res("m_div4")
    if d >= 10:
        return res("m_cong2_mod4")
    raise ConstructionError(f"no construction for a {d}-regular graph on {n} vertices")


def build_cell(cell: CellResolution) -> tuple[Graph, ConstructionTrace]:
    n, d = cell.n, cell.d
    if cell.rule == "empty":
        return _empty(n)
    if cell.rule == "clique":
        return _clique(n)
    if cell.rule == "special_table":
        return _special_3_1()
    if cell.rule == "reg_even":
        return reg_even(n, d)
    if cell.rule == "reg_odd":
        return reg_odd(n, d)
    if cell.rule == "m_div4":
        return m_div4(d)
    if cell.rule == "m_cong2_mod4":
        return m_cong2_mod4(d)
    if cell.rule == "almost_reg":
        return almost_reg(n, d)
    if cell.rule == "almost_main":
        return almost_main(d)
    raise ConstructionError(f"unknown cell rule {cell.rule!r}")


def build_grid(spec: GridSpec, **params: Any) -> tuple[Graph, ConstructionTrace]:
    parts = [build_cell(resolve_cell(c.n, c.d, c.almost)) for c in spec.cells]
    g = grid_compose([p[0] for p in parts])
    cells = [[c.n, c.d, c.almost] for c in spec.cells]
    return g, _trace("grid", tuple(p[1] for p in parts), n=g.n, cells=cells, **params)


def m_div4(m: int) -> tuple[Graph, ConstructionTrace]:
    """m-regular graph on 2m+1 vertices for m = 0 mod 4."""
    r = M_DIV4.r_for(m)
    if r is None:
        raise ConstructionError(f"m_div4 needs m = 0 mod 4 and m >= 4, got {m}")
    inner = build_grid(M_DIV4.spec(r), r=r)
    return inner[0], _trace("m_div4", (inner[1],), n=2 * m + 1, d=m, r=r)


def m_cong2_table(m: int) -> tuple[GridTable, int]:
    if m % 4 != 2 or m < 10:
        raise ConstructionError(f"m_cong2_mod4 needs m = 2 mod 4 and m >= 10, got {m}")
    for table in (M_CONG2_CASE1,) + M_CONG2_CASES:
        r = table.r_for(m)
        if r is not None:
            return table, r
    raise ConstructionError(f"no grid table covers m={m}")


def m_cong2_mod4(m: int) -> tuple[Graph, ConstructionTrace]:
    """m-regular graph on 2m+1 vertices for m = 2 mod 4, m >= 10."""
    table, r = m_cong2_table(m)
    inner = build_grid(table.spec(r), case=table.name, r=r)
    return inner[0], _trace(
        "m_cong2_mod4", (inner[1],), n=2 * m + 1, d=m, case=table.name, r=r
    )


def almost_table(m: int) -> tuple[GridSpec, str, int | None]:
    """Grid for almost_main(m) with its case name and parameter r."""
    if m % 2 == 0 or m < 9 or m == 13:
        raise ConstructionError(f"almost_main needs odd m >= 9, m != 13; got {m}")
    if m in ALMOST_SPECIAL:
        return ALMOST_SPECIAL[m], f"special{m}", None
    table = ALMOST_CASES[(m % 18 - 1) // 2]
    r = table.r_for(m)
    if r is None:
        raise ConstructionError(f"no grid table covers m={m}")
    return table.spec(r), table.name, r


def almost_main(m: int) -> tuple[Graph, ConstructionTrace]:
    """Almost m-regular graph on 2m+1 vertices for odd m >= 9, m != 13."""
    spec, case, r = almost_table(m)
    inner = build_grid(spec, case=case, r=r)
    return inner[0], _trace("almost_main", (inner[1],), n=2 * m + 1, d=m, case=case, r=r)


def n27() -> tuple[Graph, ConstructionTrace]:
    """The 27-vertex graph with 24 vertices of degree 13 and 3 of degree 12."""
    inner = build_grid(N27_GRID)
    return inner[0], _trace("n27", (inner[1],), n=27, d=13)


def is_supported(n: int) -> bool:
    try:
        _dispatch(n)
    except ConstructionError:
        return False
    return True


def _dispatch(n: int) -> str:
    if n % 2 == 0 or n < 9:
        raise ConstructionError(f"no construction for n={n}: need odd n >= 9")
    if n == 27:
        return "n27"
    m = (n - 1) // 2
    if m % 4 == 0:
        return "m_div4"
    if m % 4 == 2 and m >= 10:
        return "m_cong2_mod4"
    if m % 2 == 1 and m >= 9 and m != 13:
        return "almost_main"
    raise ConstructionError(f"no construction for n={n}")


def build(n: int) -> tuple[Graph, ConstructionTrace]:
    """Graph on odd n vertices whose triangles and anti-triangles give a
    Turán (n,5,3)-system of size M(n) (or M(27)+1 for n=27)."""
    rule = _dispatch(n)
    m = (n - 1) // 2
    if rule == "n27":
        return n27()
    if rule == "m_div4":
        return m_div4(m)
    if rule == "m_cong2_mod4":
        return m_cong2_mod4(m)
    return almost_main(m)


def rebuild(trace: ConstructionTrace) -> Graph:
    """Re-run the constructor named at the root of ``trace``."""
    p = trace.params
    rule = trace.rule
    if rule == "reg_even":
        return reg_even(p["n"], p["d"])[0]
    if rule == "reg_odd":
        return reg_odd(p["n"], p["d"])[0]
    if rule == "almost_reg":
        return almost_reg(p["n"], p["d"])[0]
    if rule == "m_div4":
        return m_div4(p["d"])[0]
    if rule == "m_cong2_mod4":
        return m_cong2_mod4(p["d"])[0]
    if rule == "almost_main":
        return almost_main(p["d"])[0]
    if rule == "n27":
        return n27()[0]
    if rule == "clique":
        return make_clique(p["n"])
    if rule == "empty":
        return make_empty(p["n"])
    if rule == "H_graph":
        return make_H(p["d"])
    if rule == "special_table":
        return _special_3_1()[0]
    if rule == "union":
        return disjoint_union([rebuild(c) for c in trace.children])
    if rule == "complement":
        return complement(rebuild(trace.children[0]))
    if rule == "grid":
        return grid_compose([rebuild(c) for c in trace.children])
    raise ConstructionError(f"unknown rule {rule!r}")
