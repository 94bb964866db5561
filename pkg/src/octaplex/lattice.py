"""The octaplex (24-cell) tessellation of the 4-torus.

Coordinates are stored scaled by 4, so quarter-integer lattice positions
become plain integers modulo 4L. Residues mod 4 then classify every cell:

    residue 0 <-> integer coordinate
    residue 2 <-> half-integer coordinate
    odd       <-> quarter-integer coordinate

Cell classification by residue pattern (counts of residue-0 / residue-2 /
odd components):

    V0    (2,2,0)  vertex
    E1    (1,1,2)  edge
    F2I   (1,0,3)  triangle anchored at an integer coordinate
    F2II  (0,1,3)  triangle anchored at a half-integer coordinate
    C3I   (1,3,0)  octahedron, one integer + three half-integer
    C3II  (3,1,0)  octahedron, three integer + one half-integer
    C3III (0,0,4)  octahedron, four quarter-integer
    H4I   (4,0,0)  24-cell at integer coordinates
    H4II  (0,4,0)  24-cell at half-integer coordinates

The 3-cells (octahedra) carry the physical qubits. Boundary maps follow the
explicit offset rules below; `cross_check_nearest` re-derives them from the
nearest-in-2-norm definition as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product

import numpy as np

from .binalg import BinMatrix

Coord = tuple[int, int, int, int]

AXES = ("x", "y", "z", "w")


class CellType(Enum):
    V0 = "V0"
    E1 = "E1"
    F2I = "F2I"
    F2II = "F2II"
    C3I = "C3I"
    C3II = "C3II"
    C3III = "C3III"
    H4I = "H4I"
    H4II = "H4II"


_PATTERN = {
    (2, 2, 0): CellType.V0,
    (1, 1, 2): CellType.E1,
    (1, 0, 3): CellType.F2I,
    (0, 1, 3): CellType.F2II,
    (1, 3, 0): CellType.C3I,
    (3, 1, 0): CellType.C3II,
    (0, 0, 4): CellType.C3III,
    (4, 0, 0): CellType.H4I,
    (0, 4, 0): CellType.H4II,
}

DIM_OF = {
    CellType.V0: 0,
    CellType.E1: 1,
    CellType.F2I: 2,
    CellType.F2II: 2,
    CellType.C3I: 3,
    CellType.C3II: 3,
    CellType.C3III: 3,
    CellType.H4I: 4,
    CellType.H4II: 4,
}

QUBIT_TYPES = (CellType.C3I, CellType.C3II, CellType.C3III)
FOURCELL_TYPES = (CellType.H4I, CellType.H4II)


class Color(Enum):
    RED = "red"
    GREEN = "green"
    BLUE = "blue"


# Positions of the two half-integer components of a vertex decide its color.
_COLOR_BY_HALF_POSITIONS = {
    frozenset({2, 3}): Color.RED,
    frozenset({0, 1}): Color.RED,
    frozenset({1, 3}): Color.GREEN,
    frozenset({0, 2}): Color.GREEN,
    frozenset({1, 2}): Color.BLUE,
    frozenset({0, 3}): Color.BLUE,
}


class NotACellError(ValueError):
    pass


def try_classify(c: Coord) -> CellType | None:
    r0 = r2 = ro = 0
    for v in c:
        m = v % 4
        if m == 0:
            r0 += 1
        elif m == 2:
            r2 += 1
        else:
            ro += 1
    return _PATTERN.get((r0, r2, ro))


def classify(c: Coord) -> CellType:
    t = try_classify(c)
    if t is None:
        raise NotACellError(f"{c} matches no cell residue pattern")
    return t


def vertex_color(v: Coord) -> Color:
    if try_classify(v) is not CellType.V0:
        raise NotACellError(f"{v} is not a vertex")
    halves = frozenset(i for i in range(4) if v[i] % 4 == 2)
    return _COLOR_BY_HALF_POSITIONS[halves]


def _half_adjacent(v: int, period: int) -> int:
    # odd value -> the neighbouring residue-2 value
    return (v + 1) % period if v % 4 == 1 else (v - 1) % period


def _int_adjacent(v: int, period: int) -> int:
    # odd value -> the neighbouring residue-0 value
    return (v - 1) % period if v % 4 == 1 else (v + 1) % period


def star24(center: Coord, period: int) -> list[Coord]:
    """The 24 cells offset by ±2 on one axis or ±1 on every axis.

    For a 4-cell this is its boundary (24 octahedra); for a vertex it is the
    set of octahedra containing it. Both coincide with the cells at squared
    scaled distance 4.
    """
    out: list[Coord] = []
    for i in range(4):
        for s in (2, -2):
            d = list(center)
            d[i] = (d[i] + s) % period
            out.append(tuple(d))
    for signs in product((1, -1), repeat=4):
        out.append(tuple((v + s) % period for v, s in zip(center, signs)))
    return out


def boundary_coords(c: Coord, period: int) -> list[Coord]:
    """Cells one dimension down, by the explicit offset rules."""
    t = classify(c)
    if t is CellType.E1:
        p, q = (i for i in range(4) if c[i] % 2)
        a = list(c)
        b = list(c)
        a[p] = _half_adjacent(c[p], period)
        a[q] = _int_adjacent(c[q], period)
        b[p] = _int_adjacent(c[p], period)
        b[q] = _half_adjacent(c[q], period)
        return [tuple(a), tuple(b)]
    if t in (CellType.F2I, CellType.F2II):
        snap = _half_adjacent if t is CellType.F2I else _int_adjacent
        out = []
        for i in range(4):
            if c[i] % 2:
                a = list(c)
                a[i] = snap(c[i], period)
                out.append(tuple(a))
        return out
    if t in (CellType.C3I, CellType.C3II):
        res = 2 if t is CellType.C3I else 0
        idx = [i for i in range(4) if c[i] % 4 == res]
        out = []
        for signs in product((1, -1), repeat=3):
            a = list(c)
            for i, s in zip(idx, signs):
                a[i] = (a[i] + s) % period
            out.append(tuple(a))
        return out
    if t is CellType.C3III:
        out = []
        for i in range(4):
            for s in (1, -1):
                a = list(c)
                a[i] = (a[i] + s) % period
                out.append(tuple(a))
        return out
    # 4-cells
    return star24(c, period)


@dataclass
class CellComplex:
    """Cells of all dimensions with boundary/co-boundary incidence.

    Cells are lexicographically ordered per dimension; all downstream check
    matrices inherit that order, so reports are byte-stable.
    """

    L: int
    period: int
    cells: list[list[Coord]]
    index: list[dict[Coord, int]]
    boundary: list[list[tuple[int, ...]]]       # boundary[d][i], d in 1..4
    coboundary: list[list[tuple[int, ...]]]     # coboundary[d][i], d in 0..3
    colors: list[Color] = field(default_factory=list)

    def cell_type(self, dim: int, i: int) -> CellType:
        return classify(self.cells[dim][i])

    def incidence_matrix(self, dim: int) -> BinMatrix:
        """Boundary map as a matrix: rows are dim-cells over (dim-1)-cells."""
        return BinMatrix.from_supports(
            len(self.cells[dim - 1]), self.boundary[dim]
        )

    def to_json_dict(self) -> dict:
        return {
            "L": self.L,
            "scale": 4,
            "cells": {str(d): [list(c) for c in self.cells[d]] for d in range(5)},
            "boundary": {
                str(d): [list(b) for b in self.boundary[d]] for d in range(1, 5)
            },
            "vertex_colors": [c.value for c in self.colors],
        }


def build_octaplex(L: int) -> CellComplex:
    """Construct the periodic tessellation at linear size L (L >= 2).

    At L=1 the ±2 offsets alias modulo 4 and distinct boundary cells
    collapse, so small sizes are rejected.
    """
    if L < 2:
        raise ValueError(
            "L must be >= 2: the ±2 cell offsets alias modulo 4L when L=1"
        )
    period = 4 * L
    cells: list[list[Coord]] = [[] for _ in range(5)]
    for c in product(range(period), repeat=4):
        t = try_classify(c)
        if t is not None:
            cells[DIM_OF[t]].append(c)
    # product() already yields lexicographic order
    index = [{c: i for i, c in enumerate(cells[d])} for d in range(5)]

    boundary: list[list[tuple[int, ...]]] = [[] for _ in range(5)]
    for d in range(1, 5):
        idx = index[d - 1]
        for c in cells[d]:
            bs = boundary_coords(c, period)
            boundary[d].append(tuple(sorted(idx[b] for b in bs)))

    coboundary: list[list[tuple[int, ...]]] = [[] for _ in range(5)]
    for d in range(4):
        buckets: list[list[int]] = [[] for _ in cells[d]]
        for i, bs in enumerate(boundary[d + 1]):
            for j in bs:
                buckets[j].append(i)
        coboundary[d] = [tuple(sorted(b)) for b in buckets]

    colors = [vertex_color(v) for v in cells[0]]
    return CellComplex(L, period, cells, index, boundary, coboundary, colors)


def incident_cells(cx: CellComplex, dim: int, i: int, target_dim: int) -> list[int]:
    """All target_dim-cells related to cell i by iterated (co)boundary."""
    if not (0 <= dim <= 4 and 0 <= target_dim <= 4):
        raise ValueError("dimensions must lie in 0..4")
    current = {i}
    d = dim
    while d != target_dim:
        step = cx.boundary[d] if target_dim < d else cx.coboundary[d]
        current = {j for c in current for j in step[c]}
        d += -1 if target_dim < d else 1
    return sorted(current)


def toroidal_dist2(a: Coord, b: Coord, period: int) -> int:
    s = 0
    for x, y in zip(a, b):
        d = abs(x - y)
        d = min(d, period - d)
        s += d * d
    return s


def cross_check_nearest(cx: CellComplex) -> bool:
    """Boundary maps equal the nearest-(d-1)-cells sets, for d in {1, 3, 4}.

    The d=2 map is skipped: triangle labels are algebraic, not centroids, so
    nearest-in-2-norm does not apply there (it is validated instead through
    ∂∘∂ = 0 and the co-boundary counts). The same label skew makes triangles
    of the wrong anchor type tie in distance at d=3, so there the candidate
    set is restricted to the matching anchor type (octahedra with a
    half-integer sheet bound F2I triangles, integer-sheet ones bound F2II;
    the all-quarter octahedra see both types and need no restriction).
    """
    period = cx.period

    def argmin_set(c: Coord, candidates: np.ndarray, ids: np.ndarray) -> set[int]:
        diff = np.abs(candidates - np.array(c, dtype=np.int64))
        diff = np.minimum(diff, period - diff)
        dist2 = (diff * diff).sum(axis=1)
        return set(ids[np.flatnonzero(dist2 == dist2.min())].tolist())

    for d in (1, 4):
        lower = np.array(cx.cells[d - 1], dtype=np.int64)
        ids = np.arange(len(cx.cells[d - 1]))
        for i, c in enumerate(cx.cells[d]):
            if argmin_set(c, lower, ids) != set(cx.boundary[d][i]):
                return False

    faces = np.array(cx.cells[2], dtype=np.int64)
    all_ids = np.arange(len(cx.cells[2]))
    types = np.array([1 if classify(f) is CellType.F2I else 2 for f in cx.cells[2]])
    by_type = {
        CellType.C3I: (faces[types == 1], all_ids[types == 1]),
        CellType.C3II: (faces[types == 2], all_ids[types == 2]),
        CellType.C3III: (faces, all_ids),
    }
    for i, c in enumerate(cx.cells[3]):
        candidates, ids = by_type[classify(c)]
        if argmin_set(c, candidates, ids) != set(cx.boundary[3][i]):
            return False
    return True


def boundary_composition_is_zero(cx: CellComplex) -> bool:
    """∂_{d-1} ∘ ∂_d = 0 over GF(2) for d in {2, 3, 4}."""
    for d in (2, 3, 4):
        outer = cx.incidence_matrix(d)
        inner = cx.incidence_matrix(d - 1)
        if not outer.matmul(inner).is_zero():
            return False
    return True


def euler_characteristic(cx: CellComplex) -> int:
    return sum((-1) ** d * len(cx.cells[d]) for d in range(5))
