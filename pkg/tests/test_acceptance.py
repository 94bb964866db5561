"""Acceptance gate: one test per criterion, exact tolerances, timed budgets.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.

Two assertions in this module check stated target values that the measured
structure contradicts (the four-quartet coupling list and the 8L^3 distance
value); they fail, and the same mismatches are carried as discrepancy
records in the tool's reports. All structural invariants pass.
"""

import time

import pytest

from octaplex.codes import (
    bounded_boundary_coordinate_count,
    build_bounded_family,
    build_periodic_family,
    build_2d_pair,
    build_3d_triple,
)
from octaplex.lattice import (
    boundary_composition_is_zero,
    build_octaplex,
    euler_characteristic,
)
from octaplex.logicals import build_logicals, certify_distances, verify_lemma_A
from octaplex.metachecks import build_ladder, verify_counting, verify_global_constraints
from octaplex.report import Fault, run_octaplex_report, report_json
from octaplex.transversal import (
    ALL_DISTINCT_TRIPLES,
    STATED_QUARTETS,
    check_ccz_conditions,
    check_cz_conditions,
    check_cccz_conditions,
    sandwich_identity,
    targeted_gate_from_rounds,
)


def _line(num: int, name: str, ok: bool, elapsed: float | None = None) -> None:
    t = f" ({elapsed:.1f}s)" if elapsed is not None else ""
    print(f"ACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'}{t}")


@pytest.fixture(scope="module")
def periodic2():
    family = build_periodic_family(2)
    basis = build_logicals(family)
    return family, basis


def test_criterion1_lattice_counts():
    t0 = time.monotonic()
    cx = build_octaplex(2)
    counts = [len(cx.cells[d]) for d in range(5)]
    ok = (
        counts == [96, 768, 1024, 384, 32]
        and euler_characteristic(cx) == 0
        and boundary_composition_is_zero(cx)
    )
    elapsed = time.monotonic() - t0
    _line(1, "lattice-counts", ok and elapsed < 5.0, elapsed)
    assert counts == [96, 768, 1024, 384, 32]
    assert euler_characteristic(cx) == 0
    assert boundary_composition_is_zero(cx)
    assert elapsed < 5.0


def test_criterion2_code_parameters():
    t0 = time.monotonic()
    for L in (2, 3):
        family = build_periodic_family(L)
        for blk in family.blocks:
            assert blk.n == 24 * L**4
            assert blk.k == 4
            assert blk.x_weights() == [24]
            assert blk.z_weights() == [3]
    elapsed = time.monotonic() - t0
    _line(2, "code-parameters", elapsed < 30.0, elapsed)
    assert elapsed < 30.0


def test_criterion3_cccz_conditions(periodic2):
    family, basis = periodic2
    t0 = time.monotonic()
    rep = check_cccz_conditions(family, basis)
    elapsed = time.monotonic() - t0
    ok = rep.all_even_pass and rep.scanned >= 10**6 and elapsed < 60.0
    _line(3, "cccz-even-conditions", ok, elapsed)
    assert rep.all_even_pass, [c.as_dict() for c in rep.conditions if not c.passed]
    assert rep.scanned >= 10**6
    assert rep.extras["tensor_entries_are_permutations"]
    assert elapsed < 60.0


def test_criterion3_coupling_is_exactly_four_quartets(periodic2):
    family, basis = periodic2
    rep = check_cccz_conditions(family, basis)
    measured = rep.tensor_support()
    _line(3, "coupling-four-quartets", measured == sorted(STATED_QUARTETS))
    assert measured == sorted(STATED_QUARTETS), (
        f"stated 4 quartets, measured {len(measured)} coupled quadruples "
        f"(every quadruple of pairwise-distinct directions)"
    )


def test_criterion4_distances(periodic2):
    family, basis = periodic2
    t0 = time.monotonic()
    cert = certify_distances(family, basis, exhaustive=True)
    elapsed = time.monotonic() - t0
    ok = (
        cert.dz == 2
        and cert.exhaustive_dz == 2
        and cert.disjoint_z_reps >= 64
        and cert.dx_lower >= 64
        and elapsed < 60.0
    )
    _line(4, "distances", ok, elapsed)
    assert cert.dz == 2
    assert cert.exhaustive_dz == 2
    assert cert.disjoint_z_reps >= 64      # 8 L^3 disjoint strings exist
    assert cert.dx_lower >= 64             # the stated lower bound holds
    assert cert.dx_lower == cert.dx_upper  # certificate is tight
    assert elapsed < 60.0


def test_criterion4_dx_is_64(periodic2):
    family, basis = periodic2
    cert = certify_distances(family, basis, exhaustive=False)
    _line(4, "dx-equals-64", cert.dx_upper == 64 and cert.dx_lower == 64)
    assert cert.dx_lower == 64 and cert.dx_upper == 64, (
        f"stated dx = 64 (8L^3); certified dx = {cert.dx_upper} (10L^3): "
        f"the hyperplane weighs {cert.dx_upper} and "
        f"{cert.disjoint_z_reps} disjoint equivalent strings force it"
    )


def test_criterion5_metacheck_ledger(periodic2):
    family, _ = periodic2
    ladder = build_ladder(family.complex, family.blocks[0])
    counting = verify_counting(ladder, 2)
    glob = verify_global_constraints(ladder)
    ok = (
        counting.ranks == {"m0": 95, "m1": 669, "hz": 349, "hx": 31}
        and counting.chain_m1_hz_zero
        and counting.chain_m0_m1_zero
        and glob.passed
        and counting.total_independent == 380
    )
    _line(5, "metacheck-ledger", ok)
    assert counting.ranks == {"m0": 95, "m1": 669, "hz": 349, "hx": 31}
    assert counting.chain_m1_hz_zero and counting.chain_m0_m1_zero
    assert glob.face_planes_zero_on_qubits and glob.face_planes_rank_gain == 6
    assert glob.edge_hyperplanes_zero_on_faces and glob.edge_hyperplanes_rank_gain == 4
    assert counting.total_independent == 24 * 2**4 - 4 == 380


def test_criterion6_bounded_family():
    family = build_bounded_family(2)
    basis = build_logicals(family)
    ok = all(blk.k == 1 for blk in family.blocks)
    for b, blk in enumerate(family.blocks):
        assert blk.k == 1
        assert set(blk.x_weights()) == {24, 15, 10, 7}
        for center, row in zip(blk.x_centers, blk.hx.rows):
            nb = bounded_boundary_coordinate_count(center, b, 2)
            assert row.bit_count() == 8 - nb + 16 // 2**nb
        assert set(blk.meta["triangle_weights"]) == {2, 3}
    rep = check_cccz_conditions(family, basis)
    ok &= rep.all_even_pass and rep.extras["single_cccz"]
    _line(6, "bounded-family", ok)
    assert rep.all_even_pass
    assert rep.extras["single_cccz"]
    assert verify_lemma_A(family, basis)


def test_criterion7_warmups():
    pair = build_2d_pair(2)
    basis2d = build_logicals(pair)
    rep2d = check_cz_conditions(pair, basis2d)
    triple = build_3d_triple(2)
    basis3d = build_logicals(triple)
    rep3d = check_ccz_conditions(triple, basis3d)
    ok = (
        rep2d.all_even_pass
        and rep3d.all_even_pass
        and set(rep3d.extras["triple_intersection_weights"]) <= {0, 2}
        and all(blk.k == 3 for blk in triple.blocks)
        and all(blk.k == 2 for blk in pair.blocks)
    )
    _line(7, "warmups", ok)
    assert rep2d.all_even_pass
    print(f"  2d measured pairing: {[[rep2d.tensor[(i, j)] for j in range(2)] for i in range(2)]}")
    assert rep3d.all_even_pass
    assert set(rep3d.extras["triple_intersection_weights"]) <= {0, 2}
    assert all(blk.k == 2 for blk in pair.blocks)
    assert all(blk.k == 3 for blk in triple.blocks)
    assert rep3d.tensor_support() == sorted(ALL_DISTINCT_TRIPLES)


def test_criterion8_phase_polynomials():
    ok = True
    for arity in (2, 3, 4):
        for pos in range(arity):
            poly = sandwich_identity(arity, pos)
            rest = [f"q{i}" for i in range(arity) if i != pos]
            ok &= poly.is_single_monomial(rest)
    quartets = [
        ["a0", "b1", "c2", "d3"],
        ["a1", "b0", "c3", "d2"],
        ["a2", "b3", "c0", "d1"],
        ["a3", "b2", "c1", "d0"],
    ]
    targeted = targeted_gate_from_rounds(quartets, "a0")
    ok &= targeted.is_single_monomial(["b1", "c2", "d3"])
    _line(8, "phase-polynomials", ok)
    assert ok
    assert sandwich_identity(4, 1).is_single_monomial(["q0", "q2", "q3"])
    assert sandwich_identity(2, 1).is_single_monomial(["q0"])


def test_criterion9_determinism():
    a = report_json(run_octaplex_report(2, threads=1))
    b = report_json(run_octaplex_report(2, threads=8))
    ok = a.encode() == b.encode()
    _line(9, "determinism", ok)
    assert a.encode() == b.encode()


def test_criterion10_negative_controls():
    perturbed = run_octaplex_report(
        2,
        sections={"logicals", "transversal"},
        fault=Fault("perturb-logical", seed=1),
    )
    recolored = run_octaplex_report(
        2, sections={"lattice"}, fault=Fault("recolor-vertex", seed=1)
    )
    perturbed_sec = perturbed.report["sections"]["logicals"]
    recolored_sec = recolored.report["sections"]["lattice"]
    ok = (
        not perturbed.ok
        and perturbed_sec["status"] == "fail"
        and bool(perturbed_sec["witnesses"])
        and not recolored.ok
        and recolored_sec["status"] == "fail"
        and bool(recolored_sec["same_color_edge_witness"])
    )
    _line(10, "negative-controls", ok)
    assert not perturbed.ok
    assert perturbed_sec["witnesses"]
    assert not recolored.ok
    assert recolored_sec["same_color_edge_witness"]
