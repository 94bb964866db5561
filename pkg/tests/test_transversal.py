import random

from octaplex.binalg import BitVec
from octaplex.transversal import (
    ALL_DISTINCT_QUADRUPLES,
    PhasePolynomial,
    STATED_QUARTETS,
    check_cccz_conditions,
    induced_logical_z,
    multilinearity_holds,
    sandwich_identity,
    targeted_gate_from_rounds,
    triple_weight_histogram,
)


def test_cccz_conditions_pass(family2, basis2):
    rep = check_cccz_conditions(family2, basis2)
    assert rep.all_even_pass
    assert rep.scanned >= 10**6
    assert rep.extras["tensor_entries_are_permutations"]
    assert rep.extras["tensor_is_all_distinct_pattern"]


def test_tensor_content(family2, basis2):
    rep = check_cccz_conditions(family2, basis2)
    support = rep.tensor_support()
    assert len(support) == 24
    assert set(STATED_QUARTETS) < set(support)
    assert support == sorted(ALL_DISTINCT_QUADRUPLES)
    # the stated four-quartet pattern is strictly smaller than measured
    assert not rep.extras["tensor_matches_stated_quartets"]


def test_tensor_representative_independent(family2, basis2):
    import copy

    rep = check_cccz_conditions(family2, basis2)
    shifted = copy.deepcopy(basis2)
    row = family2.blocks[1].hx.rows[5]
    shifted.x_ops[1][2] = BitVec(family2.n, shifted.x_ops[1][2].bits ^ row)
    rep2 = check_cccz_conditions(family2, shifted)
    assert rep2.all_even_pass
    assert rep2.tensor_support() == rep.tensor_support()


def test_threads_do_not_change_result(family2, basis2):
    a = check_cccz_conditions(family2, basis2, threads=1)
    b = check_cccz_conditions(family2, basis2, threads=8)
    assert a.as_dict() == b.as_dict()


def test_multilinearity(family2, basis2):
    rng = random.Random(9)
    rows = family2.blocks[0].hx.rows
    others = [
        family2.blocks[1].hx.rows[3],
        family2.blocks[2].hx.rows[7],
        basis2.x_ops[3][1].bits,
    ]
    trials = [(rng.randrange(len(rows)), rng.randrange(len(rows))) for _ in range(30)]
    assert multilinearity_holds(rows, others, trials)


def test_induced_logical_quartet(family2, basis2):
    # directions (z, y, x) on blocks 1..3 produce the w string on block 0
    bits = induced_logical_z(family2, basis2, [(1, 2), (2, 1), (3, 0)])
    assert bits == (0, 0, 0, 1)


def test_induced_logical_off_quartet_nontrivial(family2, basis2):
    # the stated coupling list would make this trivial; the measured class is
    # the same w string (the intersection is a quarter-sheet string, which is
    # a valid representative)
    bits = induced_logical_z(family2, basis2, [(1, 2), (2, 0), (3, 1)])
    assert bits == (0, 0, 0, 1)


def test_induced_string_reduces_to_basis_string(family2, basis2):
    acc = (
        basis2.x_ops[1][2].bits
        & basis2.x_ops[2][1].bits
        & basis2.x_ops[3][0].bits
    )
    blk0 = family2.blocks[0]
    assert blk0.hx.mul_vec(acc).bits == 0
    assert blk0.hz.in_row_space(acc ^ basis2.z_ops[0][3].bits)


def test_parallel_directions_do_not_couple(family2, basis2):
    rep = check_cccz_conditions(family2, basis2)
    assert rep.tensor[(3, 3, 3, 3)] == 0
    assert rep.tensor[(0, 0, 1, 2)] == 0


def test_triple_histogram_smoke(triple3d):
    hist = triple_weight_histogram([b.hx.rows for b in triple3d.blocks])
    assert set(hist) <= {0, 2}


# ---------------------------------------------------------------------------
# phase polynomials


def test_sandwich_cccz():
    poly = sandwich_identity(4, 0)
    assert poly.is_single_monomial(["q1", "q2", "q3"])


def test_sandwich_cz():
    poly = sandwich_identity(2, 0)
    assert poly.is_single_monomial(["q1"])


def test_sandwich_all_positions():
    for arity in (2, 3, 4):
        for pos in range(arity):
            poly = sandwich_identity(arity, pos)
            rest = [f"q{i}" for i in range(arity) if i != pos]
            assert poly.is_single_monomial(rest)
            assert poly.degree() == arity - 1


def test_conjugation_is_involution():
    gate = PhasePolynomial.multi_controlled_z(["a", "b", "c", "d"])
    assert gate.conjugated_by_x("b").conjugated_by_x("b") == gate


def test_gate_squares_to_identity():
    gate = PhasePolynomial.multi_controlled_z(["a", "b", "c"])
    assert (gate ^ gate).monomials == frozenset()


def test_four_round_sandwich_targets_one_ccz():
    # four disjoint coupled quadruples; flipping one variable leaves exactly
    # the one reduced monomial
    quartets = [
        ["a0", "b1", "c2", "d3"],
        ["a1", "b0", "c3", "d2"],
        ["a2", "b3", "c0", "d1"],
        ["a3", "b2", "c1", "d0"],
    ]
    poly = targeted_gate_from_rounds(quartets, "a0")
    assert poly.is_single_monomial(["b1", "c2", "d3"])


def test_measured_coupling_sandwich_gives_six_ccz(family2, basis2):
    # with the measured 24-entry coupling, one sandwiched logical X leaves
    # the six CCZs over the remaining blocks
    rep = check_cccz_conditions(family2, basis2)
    sets = []
    for q in rep.tensor_support():
        sets.append([f"{blk}:{d}" for blk, d in enumerate(q)])
    poly = targeted_gate_from_rounds(sets, "0:3")
    assert len(poly.monomials) == 6
    assert all(len(m) == 3 for m in poly.monomials)
