"""Grid parameter tables for the odd-order constructions.

Parametric tables store each cell as ``((a, b), (c, e))`` meaning a cell of
``a*r + b`` vertices and degree ``c*r + e``. The first cell of every
almost-regular table is the almost-regular one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CellSpec, GridSpec

Affine = tuple[int, int]
Cell = tuple[Affine, Affine]


@dataclass(frozen=True)
class GridTable:
    name: str
    modulus: int
    residue: int
    r_min: int
    cells: tuple[Cell, ...]
    almost_first: bool = False

    def r_for(self, m: int) -> int | None:
        if m % self.modulus != self.residue % self.modulus:
            return None
        r = (m - self.residue) // self.modulus
        return r if r >= self.r_min else None

    def spec(self, r: int) -> GridSpec:
        cells = []
        for i, ((a, b), (c, e)) in enumerate(self.cells):
            cells.append(CellSpec(a * r + b, c * r + e, self.almost_first and i == 0))
        return GridSpec(tuple(cells))


def _grid(*rows: str) -> tuple[Cell, ...]:
    """Parse cells written as ``"8r+1,4r-2"``; spaces are ignored."""
    out = []
    for row in rows:
        for cell in row.split(";"):
            size, deg = cell.replace(" ", "").split(",")
            out.append((_affine(size), _affine(deg)))
    return tuple(out)


def _affine(expr: str) -> Affine:
    if "r" not in expr:
        return 0, int(expr)
    head, _, tail = expr.partition("r")
    coef = int(head) if head not in ("", "+") else 1
    return coef, int(tail) if tail else 0


# m = 4r
M_DIV4 = GridTable(
    "m_div4", 4, 0, 1,
    _grid(
        "1,0;   r,r-1; r,r-1",
        "r,r-1; r,0;   r,0",
        "r,r-1; r,0;   r,0",
    ),
)

# m = 6r - 2, covering m = 10, 22, 34 (mod 36)
M_CONG2_CASE1 = GridTable(
    "case1", 6, -2, 2,
    _grid(
        "2r-1,0; 2r-1,0; 2r-1,0",
        "r,r-1;  r,r-1;  r,r-1",
        "r,r-1;  r,r-1;  r,r-1",
    ),
)

M_CONG2_CASES = (
    GridTable(
        "case2", 36, 2, 1,
        _grid(
            "8r+1,4r+2; 8r+1,4r-2; 8r+1,4r-2",
            "8r-1,4r;   8r+1,4r;   8r+1,4r",
            "8r-1,4r;   8r+1,4r;   8r+1,4r",
        ),
    ),
    GridTable(
        "case3", 36, 6, 1,
        _grid(
            "8r+2,4r+3; 8r+2,4r-2; 8r+2,4r-2",
            "8r,4r+1;   8r+2,4r;   8r+2,4r",
            "8r-1,4r;   8r+2,4r+1; 8r+2,4r+1",
        ),
    ),
    GridTable(
        "case4", 36, 14, 0,
        _grid(
            "8r+4,4r+2; 8r+4,4r;   8r+3,4r",
            "8r+3,4r+2; 8r+3,4r;   8r+3,4r+2",
            "8r+2,4r;   8r+4,4r+2; 8r+3,4r+2",
        ),
    ),
    GridTable(
        "case5", 36, 18, 0,
        _grid(
            "8r+6,4r+2; 8r+4,4r;   8r+4,4r+1",
            "8r+4,4r;   8r+4,4r+2; 8r+4,4r+3",
            "8r+4,4r+1; 8r+4,4r+3; 8r+3,4r+2",
        ),
    ),
    GridTable(
        "case6", 36, 26, 0,
        _grid(
            "8r+7,4r+2; 8r+6,4r+1; 8r+6,4r+3",
            "8r+6,4r+1; 8r+6,4r+2; 8r+6,4r+4",
            "8r+6,4r+3; 8r+6,4r+4; 8r+4,4r+2",
        ),
    ),
    GridTable(
        "case7", 36, 30, 0,
        _grid(
            "8r+8,4r+4; 8r+7,4r+2; 8r+6,4r+2",
            "8r+7,4r+2; 8r+7,4r+2; 8r+7,4r+4",
            "8r+6,4r+2; 8r+7,4r+4; 8r+6,4r+4",
        ),
    ),
)


def _fixed(*rows: str, almost_first: bool = True) -> GridSpec:
    cells = []
    for row in rows:
        for cell in row.split(";"):
            n, d = cell.replace(" ", "").split(",")
            cells.append(CellSpec(int(n), int(d), almost_first and not cells))
    return GridSpec(tuple(cells))


# Odd m handled by a dedicated grid; the first cell is almost regular.
ALMOST_SPECIAL = {
    9: _fixed("3,1; 2,0; 2,0", "2,0; 2,1; 2,1", "2,0; 2,1; 2,1"),
    11: _fixed("3,1; 3,0; 3,0", "2,1; 3,2; 2,0", "2,1; 2,0; 3,2"),
    15: _fixed("3,1; 4,3; 2,1", "4,0; 4,0; 4,2", "4,2; 3,0; 3,2"),
    17: _fixed("3,1; 4,2; 4,2", "4,2; 4,1; 4,1", "4,2; 4,1; 4,1"),
    19: _fixed("3,1; 4,3; 4,3", "5,4; 4,2; 3,0", "5,0; 5,0; 6,2"),
    37: _fixed("7,5; 9,4; 9,2", "6,5; 8,4; 9,4", "8,5; 9,2; 10,2"),
}

# m = 18r + k for odd k; index (k - 1) // 2.
ALMOST_CASES = (
    GridTable(
        "case1", 18, 1, 3,
        _grid(
            "4r-1,2r+3; 4r+2,2r-3; 4r+2,2r-3",
            "4r-3,2r+2; 4r+2,2r;   4r+1,2r-2",
            "4r-3,2r+2; 4r+1,2r-2; 4r+2,2r",
        ),
        almost_first=True,
    ),
    GridTable(
        "case2", 18, 3, 1,
        _grid(
            "4r+3,2r-1; 4r+2,2r-2; 4r+2,2r-2",
            "4r,2r;     4r,2r+1;   4r,2r+1",
            "4r,2r;     4r,2r+1;   4r,2r+1",
        ),
        almost_first=True,
    ),
    GridTable(
        "case3", 18, 5, 1,
        _grid(
            "4r+3,2r-1; 4r+2,2r-2; 4r+2,2r",
            "4r+2,2r+2; 4r,2r-1;   4r,2r+1",
            "4r,2r-2;   4r+2,2r+3; 4r,2r+1",
        ),
        almost_first=True,
    ),
    GridTable(
        "case4", 18, 7, 1,
        _grid(
            "4r+3,2r-1; 4r+2,2r-2; 4r+2,2r+2",
            "4r+2,2r;   4r+2,2r+1; 4r,2r+1",
            "4r+2,2r;   4r+2,2r+1; 4r,2r+1",
        ),
        almost_first=True,
    ),
    GridTable(
        "case5", 18, 9, 1,
        _grid(
            "4r+3,2r+3; 4r+3,2r-2; 4r+3,2r-2",
            "4r,2r+1;   4r+3,2r+2; 4r+2,2r",
            "4r,2r+1;   4r+2,2r;   4r+3,2r+2",
        ),
        almost_first=True,
    ),
    GridTable(
        "case6", 18, 11, 1,
        _grid(
            "4r+3,2r+3; 4r+2,2r+1; 4r,2r+1",
            "4r+3,2r-2; 4r+4,2r;   4r+3,2r+2",
            "4r+3,2r;   4r+3,2r;   4r+2,2r+2",
        ),
        almost_first=True,
    ),
    GridTable(
        "case7", 18, 13, 1,
        _grid(
            "4r+3,2r+3; 4r+4,2r-1; 4r+4,2r-1",
            "4r+1,2r+2; 4r+4,2r+2; 4r+3,2r",
            "4r+1,2r+2; 4r+3,2r;   4r+4,2r+2",
        ),
        almost_first=True,
    ),
    GridTable(
        "case8", 18, 15, 1,
        _grid(
            "4r+3,2r+3; 4r+4,2r;   4r+4,2r",
            "4r+2,2r+2; 4r+4,2r+1; 4r+4,2r+1",
            "4r+2,2r+2; 4r+4,2r+1; 4r+4,2r+1",
        ),
        almost_first=True,
    ),
    GridTable(
        "case9", 18, 17, 1,
        _grid(
            "4r+3,2r+3; 4r+4,2r+1; 4r+4,2r+1",
            "4r+2,2r+2; 4r+4,2r+2; 4r+4,2r+2",
            "4r+4,2r+2; 4r+5,2r;   4r+5,2r",
        ),
        almost_first=True,
    ),
)

N27_GRID = _fixed(
    "4,0; 4,0; 4,0", "3,2; 2,1; 2,1", "2,0; 3,2; 3,2", almost_first=False
)
