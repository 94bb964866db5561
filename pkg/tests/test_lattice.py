import pytest

from octaplex.binalg import BinMatrix
from octaplex.lattice import (
    CellType,
    Color,
    NotACellError,
    boundary_composition_is_zero,
    build_octaplex,
    classify,
    cross_check_nearest,
    euler_characteristic,
    incident_cells,
    toroidal_dist2,
    vertex_color,
)


def test_cell_counts(cx2):
    L = 2
    assert [len(cx2.cells[d]) for d in range(5)] == [
        6 * L**4, 48 * L**4, 64 * L**4, 24 * L**4, 2 * L**4,
    ]


def test_euler_characteristic(cx2):
    assert euler_characteristic(cx2) == 0


def test_classify_examples():
    assert classify((0, 0, 2, 2)) is CellType.V0
    assert classify((1, 1, 1, 1)) is CellType.C3III
    assert classify((0, 2, 1, 3)) is CellType.E1
    assert classify((0, 0, 0, 0)) is CellType.H4I
    with pytest.raises(NotACellError):
        classify((0, 0, 0, 1))


def test_vertex_colors():
    assert vertex_color((0, 0, 2, 2)) is Color.RED
    assert vertex_color((0, 2, 0, 2)) is Color.GREEN
    assert vertex_color((0, 2, 2, 0)) is Color.BLUE
    with pytest.raises(NotACellError):
        vertex_color((1, 1, 1, 1))


def test_small_l_rejected():
    with pytest.raises(ValueError):
        build_octaplex(1)


def test_boundary_cardinalities(cx2):
    assert all(len(b) == 24 for b in cx2.boundary[4])
    assert all(len(b) == 8 for b in cx2.boundary[3])
    assert all(len(b) == 3 for b in cx2.boundary[2])
    assert all(len(b) == 2 for b in cx2.boundary[1])


def test_coboundary_cardinalities(cx2):
    assert all(len(c) == 3 for c in cx2.coboundary[2])   # faces in 3 octahedra
    assert all(len(c) == 4 for c in cx2.coboundary[1])   # edges in 4 faces
    assert all(len(c) == 2 for c in cx2.coboundary[3])   # octahedra in 2 bodies
    assert all(len(c) == 16 for c in cx2.coboundary[0])  # vertices in 16 edges


def test_incident_cells_counts(cx2):
    assert len(incident_cells(cx2, 0, 0, 3)) == 24
    assert len(incident_cells(cx2, 1, 5, 2)) == 4
    assert len(incident_cells(cx2, 2, 7, 3)) == 3
    assert len(incident_cells(cx2, 0, 3, 2)) == 32
    with pytest.raises(ValueError):
        incident_cells(cx2, 0, 0, 5)


def test_boundary_squared_is_zero(cx2):
    assert boundary_composition_is_zero(cx2)


def test_nearest_cross_check(cx2):
    assert cross_check_nearest(cx2)


def test_fourcell_boundary_distance(cx2):
    i = cx2.index[4][(0, 0, 0, 0)]
    for j in cx2.boundary[4][i]:
        assert toroidal_dist2((0, 0, 0, 0), cx2.cells[3][j], cx2.period) == 4


def test_fourcell_boundary_composition(cx2):
    # 8 octahedra at +-2 along one axis, 16 at (+-1,+-1,+-1,+-1)
    i = cx2.index[4][(0, 0, 0, 0)]
    types = [classify(cx2.cells[3][j]) for j in cx2.boundary[4][i]]
    assert sum(1 for t in types if t is CellType.C3II) == 8
    assert sum(1 for t in types if t is CellType.C3III) == 16


def test_edge_boundary_distance(cx2):
    for i in range(0, len(cx2.cells[1]), 97):
        e = cx2.cells[1][i]
        for j in cx2.boundary[1][i]:
            assert toroidal_dist2(e, cx2.cells[0][j], cx2.period) == 2


def test_edge_adjacency_iff_distance_eight(cx2):
    # vertices share an edge exactly when their toroidal distance^2 is 8
    adj = set()
    for a, b in cx2.boundary[1]:
        adj.add((min(a, b), max(a, b)))
    verts = cx2.cells[0]
    count = 0
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            d2 = toroidal_dist2(verts[i], verts[j], cx2.period)
            if d2 == 8:
                count += 1
                assert (i, j) in adj
            else:
                assert (i, j) not in adj
    assert count == len(adj)


def test_no_same_color_edge(cx2):
    for a, b in cx2.boundary[1]:
        assert cx2.colors[a] is not cx2.colors[b]


def test_color_balance(cx2):
    for c in Color:
        assert sum(1 for col in cx2.colors if col is c) == 2 * cx2.L**4


def test_each_face_has_three_colors(cx2):
    for i in range(len(cx2.cells[2])):
        verts = incident_cells(cx2, 2, i, 0)
        assert len(verts) == 3
        assert {cx2.colors[v] for v in verts} == set(Color)


def test_each_octahedron_has_two_of_each_color(cx2):
    for i in range(len(cx2.cells[3])):
        verts = incident_cells(cx2, 3, i, 0)
        assert len(verts) == 6
        counts = {c: 0 for c in Color}
        for v in verts:
            counts[cx2.colors[v]] += 1
        assert set(counts.values()) == {2}


def test_role_exchange_translation(cx2):
    # translating by (1/2, 1/2, 0, 0) swaps red vertices with 4-cells and
    # green with blue, and fixes the set of 3-cells
    t = (2, 2, 0, 0)
    period = cx2.period

    def shift(c):
        return tuple((v + s) % period for v, s in zip(c, t))

    fours = set(cx2.cells[4])
    reds = {v for v, c in zip(cx2.cells[0], cx2.colors) if c is Color.RED}
    greens = {v for v, c in zip(cx2.cells[0], cx2.colors) if c is Color.GREEN}
    blues = {v for v, c in zip(cx2.cells[0], cx2.colors) if c is Color.BLUE}
    assert {shift(v) for v in reds} == fours
    assert {shift(v) for v in fours} == reds
    assert {shift(v) for v in greens} == blues
    assert {shift(v) for v in blues} == greens
    assert {shift(q) for q in cx2.cells[3]} == set(cx2.cells[3])
    # a 4-cell's 24 octahedra become the shifted red vertex's star
    from octaplex.lattice import star24

    for i in (0, 11, 31):
        c = cx2.cells[4][i]
        shifted_boundary = {shift(cx2.cells[3][j]) for j in cx2.boundary[4][i]}
        assert vertex_color(shift(c)) is Color.RED
        assert shifted_boundary == set(star24(shift(c), cx2.period))


def test_incidence_matrix_shapes(cx2):
    m = cx2.incidence_matrix(3)
    assert m.shape == (len(cx2.cells[3]), len(cx2.cells[2]))
    assert isinstance(m, BinMatrix)


def test_json_export_roundtrip(cx2):
    d = cx2.to_json_dict()
    assert d["L"] == 2
    assert len(d["cells"]["3"]) == 384
    assert len(d["boundary"]["4"][0]) == 24
    assert len(d["vertex_colors"]) == 96
