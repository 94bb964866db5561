"""Transversal multi-controlled-Z verification.

For codeblocks sharing one qubit index, a transversal CZ/CCZ/CCCZ preserves
the joint codespace iff every mixed intersection of X stabilizers and X
logicals across the blocks has even weight, except the pure-logical one,
whose parities form the coupling tensor of the induced logical gate.

All parities here are multilinear in each slot (bitwise AND distributes
over XOR), so checking generators plus fixed representatives covers the
full stabilizer group; `multilinearity_holds` spot-checks that identity.

The phase-polynomial engine represents diagonal gates at the pi-phase level
as sets of monomials over named binary variables and implements conjugation
by X (variable substitution x -> 1 + x), which is what reduces a sandwiched
multi-controlled-Z to a lower-arity gate.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .binalg import BitVec, parity
from .codes import CodeFamily
from .logicals import LogicalBasis, PauliSupport, logical_class

# Expected coupling pattern for the periodic four-block family: every
# quadruple of pairwise-distinct directions couples (the four X hyperplanes
# then intersect in an odd point set). Derived independently of the checker:
# the quarter sheets of all four operators meet in the single cell with all
# quarter coordinates when, and only when, the directions are a permutation.
ALL_DISTINCT_QUADRUPLES = tuple(
    q for q in itertools.product(range(4), repeat=4) if len(set(q)) == 4
)

# The four quartets the construction is stated to couple (a strict subset of
# the above; the measured tensor decides which pattern actually holds).
STATED_QUARTETS = ((3, 2, 1, 0), (2, 3, 0, 1), (1, 0, 3, 2), (0, 1, 2, 3))

ALL_DISTINCT_TRIPLES = tuple(
    t for t in itertools.product(range(3), repeat=3) if len(set(t)) == 3
)


@dataclass
class ConditionResult:
    name: str
    passed: bool
    scanned: int
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "quadruples_scanned": self.scanned,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass
class TransversalReport:
    arity: int
    conditions: list[ConditionResult]
    tensor: dict[tuple, int]
    tensor_labels: list[str]
    pairing_is_identity: bool | None = None
    extras: dict = field(default_factory=dict)

    @property
    def all_even_pass(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def scanned(self) -> int:
        return sum(c.scanned for c in self.conditions)

    def tensor_support(self) -> list[tuple]:
        return sorted(k for k, v in self.tensor.items() if v)

    def as_dict(self) -> dict:
        return {
            "arity": self.arity,
            "conditions": [c.as_dict() for c in self.conditions],
            "coupling_tensor_nonzero": [list(k) for k in self.tensor_support()],
            "tensor_labels": self.tensor_labels,
            "pairing_is_identity": self.pairing_is_identity,
            "quadruples_scanned": self.scanned,
            **self.extras,
        }


def _overlap_scan(
    slot_masks: Sequence[Sequence[int]],
    threads: int = 1,
) -> tuple[bool, int, tuple | None]:
    """All-even check over the cartesian product of slot operators.

    Prunes on empty partial intersections but counts the pruned tuples as
    scanned (they are verified even by emptiness). Parallelism splits the
    first slot; the witness is the lexicographically first violation, so the
    result is independent of scheduling.
    """
    rest = slot_masks[1:]
    sizes = [len(s) for s in rest]

    def tail_count(depth: int) -> int:
        c = 1
        for s in sizes[depth:]:
            c *= s
        return c

    def scan_chunk(first_indices: Iterable[int]) -> tuple[int, tuple | None]:
        scanned = 0
        witness: tuple | None = None

        def descend(prefix: tuple, acc: int, depth: int) -> bool:
            nonlocal scanned, witness
            if depth == len(rest):
                scanned += 1
                if acc and parity(acc):
                    witness = prefix
                    return True
                return False
            if not acc:
                scanned += tail_count(depth)
                return False
            for j, m in enumerate(rest[depth]):
                if descend(prefix + (j,), acc & m, depth + 1):
                    return True
            return False

        for i in first_indices:
            if descend((i,), slot_masks[0][i], 0):
                break
        return scanned, witness

    first = range(len(slot_masks[0]))
    if threads <= 1:
        scanned, witness = scan_chunk(first)
    else:
        chunks = [list(first)[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan_chunk, chunks))
        scanned = sum(r[0] for r in results)
        witness = min((r[1] for r in results if r[1] is not None), default=None)
    if witness is not None:
        # Aborted scans depend on scheduling; report the full product size so
        # the count in failure reports is thread-count independent.
        scanned = len(slot_masks[0]) * tail_count(0)
    return witness is None, scanned, witness


def _mixed_conditions(
    stab_masks: list[list[int]],
    logical_masks: list[list[int]],
    n_logical_slots: int,
    name: str,
    threads: int = 1,
) -> ConditionResult:
    """One condition level: a fixed number of logical slots over all block
    placements, stabilizers filling the rest."""
    blocks = range(len(stab_masks))
    passed = True
    scanned = 0
    witness = None
    for logical_blocks in itertools.combinations(blocks, n_logical_slots):
        slots = []
        for b in blocks:
            slots.append(
                logical_masks[b] if b in logical_blocks else stab_masks[b]
            )
        ok, count, wit = _overlap_scan(slots, threads=threads)
        scanned += count
        if not ok and witness is None:
            passed = False
            witness = (logical_blocks, wit)
    return ConditionResult(name, passed, scanned, witness)


def _coupling_tensor(
    logical_masks: list[list[int]],
) -> dict[tuple, int]:
    shape = [range(len(m)) for m in logical_masks]
    tensor = {}
    for idx in itertools.product(*shape):
        acc = -1
        for b, i in enumerate(idx):
            acc = logical_masks[b][i] if acc == -1 else acc & logical_masks[b][i]
            if not acc:
                break
        tensor[idx] = parity(acc) if acc > 0 else 0
    return tensor


def _masks(family: CodeFamily, basis: LogicalBasis) -> tuple[list[list[int]], list[list[int]]]:
    stab = [blk.hx.rows for blk in family.blocks]
    logical = [[v.bits for v in basis.x_ops[b]] for b in range(len(family.blocks))]
    return stab, logical


def check_cz_conditions(
    family: CodeFamily, basis: LogicalBasis, threads: int = 1
) -> TransversalReport:
    """Two-block conditions: stabilizer overlaps even, logical pairing measured."""
    if len(family.blocks) != 2:
        raise ValueError("need exactly two blocks")
    stab, logical = _masks(family, basis)
    conditions = [
        _mixed_conditions(stab, logical, 0, "stab_stab_even", threads),
        _mixed_conditions(stab, logical, 1, "stab_logical_even", threads),
    ]
    tensor = _coupling_tensor(logical)
    k = len(logical[0])
    identity = all(
        tensor[(i, j)] == (1 if i == j else 0)
        for i in range(k)
        for j in range(k)
    )
    return TransversalReport(
        2, conditions, tensor, list(basis.labels), pairing_is_identity=identity
    )


def check_ccz_conditions(
    family: CodeFamily, basis: LogicalBasis, threads: int = 1
) -> TransversalReport:
    if len(family.blocks) != 3:
        raise ValueError("need exactly three blocks")
    stab, logical = _masks(family, basis)
    conditions = [
        _mixed_conditions(stab, logical, 0, "sss_even", threads),
        _mixed_conditions(stab, logical, 1, "ssl_even", threads),
        _mixed_conditions(stab, logical, 2, "sll_even", threads),
    ]
    tensor = _coupling_tensor(logical)
    hist = triple_weight_histogram(stab)
    extras = {"triple_intersection_weights": sorted(hist)}
    return TransversalReport(3, conditions, tensor, list(basis.labels), extras=extras)


def triple_weight_histogram(stab_masks: list[list[int]]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for a in stab_masks[0]:
        for b in stab_masks[1]:
            s = a & b
            if not s:
                hist[0] = hist.get(0, 0) + len(stab_masks[2])
                continue
            for c in stab_masks[2]:
                w = (s & c).bit_count()
                hist[w] = hist.get(w, 0) + 1
    return hist


def check_cccz_conditions(
    family: CodeFamily, basis: LogicalBasis, threads: int = 1
) -> TransversalReport:
    if len(family.blocks) != 4:
        raise ValueError("need exactly four blocks")
    stab, logical = _masks(family, basis)
    conditions = [
        _mixed_conditions(stab, logical, 0, "ssss_even", threads),
        _mixed_conditions(stab, logical, 1, "sssl_even", threads),
        _mixed_conditions(stab, logical, 2, "ssll_even", threads),
        _mixed_conditions(stab, logical, 3, "slll_even", threads),
    ]
    tensor = _coupling_tensor(logical)
    support = sorted(k for k, v in tensor.items() if v)
    k = len(logical[0])
    extras: dict = {}
    if k == 4:
        extras["tensor_is_all_distinct_pattern"] = (
            support == sorted(ALL_DISTINCT_QUADRUPLES)
        )
        extras["tensor_matches_stated_quartets"] = (
            support == sorted(STATED_QUARTETS)
        )
        extras["tensor_entries_are_permutations"] = all(
            len(set(q)) == 4 for q in support
        )
    if k == 1:
        extras["single_cccz"] = support == [(0, 0, 0, 0)]
    return TransversalReport(4, conditions, tensor, list(basis.labels), extras=extras)


def multilinearity_holds(
    slot_a: Sequence[int], others: Sequence[int], trials: Sequence[tuple[int, int]]
) -> bool:
    """parity((a xor a') & M) == parity(a & M) xor parity(a' & M)."""
    rest = -1
    for m in others:
        rest = m if rest == -1 else rest & m
    for i, j in trials:
        lhs = parity((slot_a[i] ^ slot_a[j]) & rest)
        rhs = parity(slot_a[i] & rest) ^ parity(slot_a[j] & rest)
        if lhs != rhs:
            return False
    return True


def induced_logical_z(
    family: CodeFamily,
    basis: LogicalBasis,
    reps: Sequence[tuple[int, int]],
) -> tuple[int, ...] | None:
    """Logical class, on the remaining block, of the common intersection of
    three X logicals given as (block, direction) pairs from distinct blocks."""
    blocks = [b for b, _ in reps]
    if len(set(blocks)) != 3 or len(family.blocks) != 4:
        raise ValueError("need X logicals from three distinct blocks of four")
    target = next(b for b in range(4) if b not in blocks)
    acc = -1
    for b, d in reps:
        m = basis.x_ops[b][d].bits
        acc = m if acc == -1 else acc & m
    support = PauliSupport("Z", target, BitVec(family.n, acc if acc != -1 else 0))
    return logical_class(family, basis, support)


# ---------------------------------------------------------------------------
# phase polynomials


@dataclass(frozen=True)
class PhasePolynomial:
    """Multilinear polynomial over GF(2); the gate is (-1)^(sum of monomials)."""

    monomials: frozenset[frozenset[str]] = frozenset()

    @classmethod
    def multi_controlled_z(cls, variables: Iterable[str]) -> "PhasePolynomial":
        vs = frozenset(variables)
        if len(vs) < 1:
            raise ValueError("need at least one variable")
        return cls(frozenset({vs}))

    def __xor__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        return PhasePolynomial(self.monomials ^ other.monomials)

    def conjugated_by_x(self, var: str) -> "PhasePolynomial":
        """Polynomial of X G X: substitute var -> 1 + var."""
        out: set[frozenset[str]] = set()
        for m in self.monomials:
            out ^= {m}
            if var in m:
                out ^= {m - {var}}
        return PhasePolynomial(frozenset(out))

    def sandwich(self, var: str) -> "PhasePolynomial":
        """Diagonal part of G X G beyond the X itself: G + X G X."""
        return self ^ self.conjugated_by_x(var)

    def is_single_monomial(self, variables: Iterable[str]) -> bool:
        return self.monomials == frozenset({frozenset(variables)})

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)


def sandwich_identity(gate_arity: int, flipped_qubit: int) -> PhasePolynomial:
    """G X_i G for an arity-n controlled-Z gate G, as a phase polynomial.

    The result must be the single monomial over the remaining variables.
    """
    if gate_arity < 2 or not (0 <= flipped_qubit < gate_arity):
        raise ValueError("arity >= 2 and flipped qubit within range required")
    names = [f"q{i}" for i in range(gate_arity)]
    gate = PhasePolynomial.multi_controlled_z(names)
    return gate.sandwich(names[flipped_qubit])


def targeted_gate_from_rounds(
    coupled_sets: Sequence[Sequence[str]], flipped: str
) -> PhasePolynomial:
    """Sandwich one logical X between two rounds of a coupled gate product.

    ``coupled_sets`` lists the monomials the transversal gate implements;
    sandwiching keeps exactly the reduced monomials of those containing the
    flipped variable.
    """
    gate = PhasePolynomial(frozenset(frozenset(s) for s in coupled_sets))
    return gate.sandwich(flipped)
