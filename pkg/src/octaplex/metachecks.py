"""Extended Tanner graph of the Z-check side: metachecks and rank ledger.

Levels, bottom to top:

    qubits (3-cells)  <-  Z checks (2-cells)  <-  edge metachecks (1-cells)
                                              <-  vertex metachecks (0-cells)

plus the global combinations: six face planes (one per axis pair), four edge
hyperplanes (one per axis), the all-vertices combination, and the
all-X-stabilizers combination. Chain conditions m1*hz = 0 and m0*m1 = 0 hold
exactly, and the rank bookkeeping

    rank(m0) = 6L^4-1,  rank(m1) = 42L^4-3,
    rank(hz) = 22L^4-3, rank(hx) = 2L^4-1

accounts for all dependencies, leaving 4 logical qubits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binalg import BinMatrix, BitVec, mask_from_support
from .codes import Codeblock
from .lattice import AXES, CellComplex


@dataclass
class MetacheckLadder:
    cx: CellComplex
    hz: BinMatrix                        # 2-cells x qubits
    hx: BinMatrix                        # 4-cells x qubits
    m1: BinMatrix                        # 1-cells x 2-cells
    m0: BinMatrix                        # 0-cells x 1-cells
    globals2: dict[tuple[str, str], BitVec]   # face planes, per axis pair
    globals1: dict[str, BitVec]               # edge hyperplanes, per axis
    global0: BitVec                           # all vertices
    globalX: BitVec                           # all X stabilizer rows
    face_of_edge_triple: dict[tuple[int, ...], int] = field(default_factory=dict)


def _face_plane(cx: CellComplex, ax1: int, ax2: int) -> BitVec:
    """Faces with both transverse coordinates at value 1 and the (ax1, ax2)
    coordinates on the integer/quarter sublattices in either order."""
    other = [i for i in range(4) if i not in (ax1, ax2)]
    sel = []
    for i, f in enumerate(cx.cells[2]):
        if f[other[0]] != 1 or f[other[1]] != 1:
            continue
        a, b = f[ax1], f[ax2]
        if (a % 4 == 0 and b % 2 == 1) or (a % 2 == 1 and b % 4 == 0):
            sel.append(i)
    return BitVec(len(cx.cells[2]), mask_from_support(sel))


def _edge_hyperplane(cx: CellComplex, axis: int) -> BitVec:
    sel = [i for i, e in enumerate(cx.cells[1]) if e[axis] == 1]
    return BitVec(len(cx.cells[1]), mask_from_support(sel))


def build_ladder(cx: CellComplex, block0: Codeblock) -> MetacheckLadder:
    n2 = len(cx.cells[2])
    n1 = len(cx.cells[1])
    m1 = BinMatrix.from_supports(n2, cx.coboundary[1])
    m0 = BinMatrix.from_supports(n1, cx.coboundary[0])
    globals2 = {}
    for i in range(4):
        for j in range(i + 1, 4):
            globals2[(AXES[i], AXES[j])] = _face_plane(cx, i, j)
    globals1 = {AXES[i]: _edge_hyperplane(cx, i) for i in range(4)}
    global0 = BitVec(len(cx.cells[0]), (1 << len(cx.cells[0])) - 1)
    globalX = BitVec(len(block0.hx.rows), (1 << len(block0.hx.rows)) - 1)
    triple_lookup = {
        tuple(sorted(cx.boundary[2][i])): i for i in range(n2)
    }
    return MetacheckLadder(
        cx, block0.hz, block0.hx, m1, m0,
        globals2, globals1, global0, globalX,
        face_of_edge_triple=triple_lookup,
    )


@dataclass
class CountingReport:
    L: int
    ranks: dict[str, int]
    expected: dict[str, int]
    chain_m1_hz_zero: bool
    chain_m0_m1_zero: bool
    k: int
    sum_hx_rows_zero: bool
    total_independent: int

    @property
    def passed(self) -> bool:
        return (
            self.ranks == self.expected
            and self.chain_m1_hz_zero
            and self.chain_m0_m1_zero
            and self.k == 4
            and self.sum_hx_rows_zero
        )

    def as_dict(self) -> dict:
        return {
            "ranks": self.ranks,
            "expected": self.expected,
            "chain_m1_hz_zero": self.chain_m1_hz_zero,
            "chain_m0_m1_zero": self.chain_m0_m1_zero,
            "k": self.k,
            "sum_hx_rows_zero": self.sum_hx_rows_zero,
            "total_independent_generators": self.total_independent,
            "passed": self.passed,
        }


def verify_counting(ladder: MetacheckLadder, L: int) -> CountingReport:
    ranks = {
        "m0": ladder.m0.rank(),
        "m1": ladder.m1.rank(),
        "hz": ladder.hz.rank(),
        "hx": ladder.hx.rank(),
    }
    expected = {
        "m0": 6 * L**4 - 1,
        "m1": 42 * L**4 - 3,
        "hz": 22 * L**4 - 3,
        "hx": 2 * L**4 - 1,
    }
    n = ladder.hz.cols
    k = n - ranks["hx"] - ranks["hz"]
    acc = 0
    for r in ladder.hx.rows:
        acc ^= r
    return CountingReport(
        L=L,
        ranks=ranks,
        expected=expected,
        chain_m1_hz_zero=ladder.m1.matmul(ladder.hz).is_zero(),
        chain_m0_m1_zero=ladder.m0.matmul(ladder.m1).is_zero(),
        k=k,
        sum_hx_rows_zero=(acc == 0),
        total_independent=ranks["hx"] + ranks["hz"],
    )


@dataclass
class GlobalConstraintReport:
    face_planes_zero_on_qubits: bool
    face_planes_rank_gain: int
    edge_hyperplanes_zero_on_faces: bool
    edge_hyperplanes_rank_gain: int
    vertex_sum_zero_on_edges: bool
    m0_rank_deficit: int
    hx_sum_zero: bool
    hx_rank_deficit: int

    @property
    def passed(self) -> bool:
        return (
            self.face_planes_zero_on_qubits
            and self.face_planes_rank_gain == 6
            and self.edge_hyperplanes_zero_on_faces
            and self.edge_hyperplanes_rank_gain == 4
            and self.vertex_sum_zero_on_edges
            and self.m0_rank_deficit == 1
            and self.hx_sum_zero
            and self.hx_rank_deficit == 1
        )

    def as_dict(self) -> dict:
        d = self.__dict__.copy()
        d["passed"] = self.passed
        return d


def verify_global_constraints(ladder: MetacheckLadder) -> GlobalConstraintReport:
    faces_zero = all(
        ladder.hz.row_combination(g.bits).bits == 0
        for g in ladder.globals2.values()
    )
    # A face plane is a dependency among hz rows; independence from the local
    # (edge) dependencies shows up as rank gain over m1's row space.
    gain2 = ladder.m1.rank_increase([g.bits for g in ladder.globals2.values()])

    edges_zero = all(
        ladder.m1.row_combination(g.bits).bits == 0
        for g in ladder.globals1.values()
    )
    gain1 = ladder.m0.rank_increase([g.bits for g in ladder.globals1.values()])

    vertex_sum = 0
    for r in ladder.m0.rows:
        vertex_sum ^= r
    hx_sum = 0
    for r in ladder.hx.rows:
        hx_sum ^= r
    return GlobalConstraintReport(
        face_planes_zero_on_qubits=faces_zero,
        face_planes_rank_gain=gain2,
        edge_hyperplanes_zero_on_faces=edges_zero,
        edge_hyperplanes_rank_gain=gain1,
        vertex_sum_zero_on_edges=(vertex_sum == 0),
        m0_rank_deficit=len(ladder.m0.rows) - ladder.m0.rank(),
        hx_sum_zero=(hx_sum == 0),
        hx_rank_deficit=len(ladder.hx.rows) - ladder.hx.rank(),
    )


@dataclass
class RepairDemo:
    violated_edges: list[int]
    violated_per_flip: int | None
    identified_face: int | None
    edge_metacheck_row_weight: int
    face_boundary_edge_count: int

    def as_dict(self) -> dict:
        return self.__dict__.copy()


def single_shot_repair_demo(
    ladder: MetacheckLadder, flipped_checks: set[int]
) -> RepairDemo:
    """Metacheck syndrome of a set of flipped Z-check outcomes.

    A single flipped triangular check violates the metachecks of its three
    boundary edges (a triangle has three edges); each edge metacheck spans
    four faces. Both counts are reported. For single flips the flipped check
    is recovered uniquely from its violated-edge set.
    """
    flip_mask = mask_from_support(flipped_checks)
    syndrome = ladder.m1.mul_vec(flip_mask)
    violated = syndrome.support()
    identified = None
    per_flip = None
    if len(flipped_checks) == 1:
        per_flip = len(violated)
        identified = ladder.face_of_edge_triple.get(tuple(sorted(violated)))
    return RepairDemo(
        violated_edges=violated,
        violated_per_flip=per_flip,
        identified_face=identified,
        edge_metacheck_row_weight=ladder.m1.rows[0].bit_count(),
        face_boundary_edge_count=len(ladder.cx.boundary[2][0]),
    )


def tanner_graph_json(ladder: MetacheckLadder) -> dict:
    cx = ladder.cx
    return {
        "levels": ["qubits", "z_checks", "edge_metachecks", "vertex_metachecks"],
        "counts": {
            "qubits": len(cx.cells[3]),
            "z_checks": len(cx.cells[2]),
            "edge_metachecks": len(cx.cells[1]),
            "vertex_metachecks": len(cx.cells[0]),
        },
        "z_check_supports": [sorted(cx.coboundary[2][i]) for i in range(len(cx.cells[2]))],
        "edge_metacheck_supports": [
            sorted(BitVec(ladder.m1.cols, r).support()) for r in ladder.m1.rows
        ],
        "vertex_metacheck_supports": [
            sorted(BitVec(ladder.m0.cols, r).support()) for r in ladder.m0.rows
        ],
        "globals": {
            "face_planes": {
                "-".join(k): sorted(v.support()) for k, v in ladder.globals2.items()
            },
            "edge_hyperplanes": {
                k: sorted(v.support()) for k, v in ladder.globals1.items()
            },
            "all_vertices": "all",
            "all_x_stabilizers": "all",
        },
    }
