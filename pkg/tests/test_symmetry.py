from itertools import permutations

import numpy as np
import pytest

from harmonic_census import (
    BudgetExceededError,
    GeneratorSet,
    PrimeModulus,
    ScaledCyclotomic,
    build_frame,
    conjecture_scan,
    enumerate_orbits,
    full_symmetry_group,
    gram,
    gram_automorphisms,
    guaranteed_subgroup,
    reconstructed_element,
    root_power,
)
from harmonic_census.symmetry import (
    KIND_BLOCK_PERM,
    KIND_DIAGONAL,
    _verify_permutations,
)

M5 = PrimeModulus(5)
M7 = PrimeModulus(7)


def test_guaranteed_subgroup_examples():
    r = guaranteed_subgroup(GeneratorSet(M5, (1, 2)))
    assert (r.stabilizer_order, r.subgroup_order) == (1, 5)
    r = guaranteed_subgroup(GeneratorSet(M5, (1, 4)))
    assert (r.stabilizer_order, r.subgroup_order) == (2, 10)
    r = guaranteed_subgroup(GeneratorSet(M7, (1, 2, 4)))
    assert (r.stabilizer_order, r.subgroup_order) == (3, 21)


def test_guaranteed_subgroup_element_kinds():
    r = guaranteed_subgroup(GeneratorSet(M5, (1, 4)))
    kinds = {(e.kind, e.power) for e in r.elements}
    assert (KIND_DIAGONAL, 0) in kinds  # identity
    assert (KIND_DIAGONAL, 1) in kinds
    assert (KIND_BLOCK_PERM, 1) in kinds
    assert len(r.elements) == 10
    # generator descriptions name both generators; Q swaps the two slots
    assert r.generators_found[0] == {"kind": "diagonal", "exponents": [1, 4]}
    assert r.generators_found[1]["kind"] == "block_perm"
    assert r.generators_found[1]["slot_perm"] == [1, 0]


def test_guaranteed_subgroup_matrices_exact():
    r = guaranteed_subgroup(GeneratorSet(M5, (1, 4)))
    d_elem = next(
        e for e in r.elements if e.kind == KIND_DIAGONAL and e.power == 1
    )
    assert d_elem.entry(0, 0) == ScaledCyclotomic(root_power(M5, 1), 1)
    assert d_elem.entry(1, 1) == ScaledCyclotomic(root_power(M5, 4), 1)
    assert d_elem.entry(0, 1).numerator.is_zero


def test_degenerate_zero_set():
    r = guaranteed_subgroup(GeneratorSet(M5, (0,)))
    assert r.subgroup_order == 1
    assert r.stabilizer_order == 4
    full = full_symmetry_group(GeneratorSet(M5, (0,)))
    assert full.full_group_order == 1
    assert full.conjecture_holds is True


def test_gram_automorphisms_trivial_stabilizer():
    autos = gram_automorphisms(gram(build_frame(GeneratorSet(M5, (1, 2)))))
    assert len(autos) == 5
    shifts = sorted(tuple((m + b) % 5 for m in range(5)) for b in range(5))
    assert autos == shifts


def test_gram_automorphisms_pm_structure():
    autos = gram_automorphisms(gram(build_frame(GeneratorSet(M5, (1, 4)))))
    assert len(autos) == 10
    expected = sorted(
        tuple((sign * j + b) % 5 for j in range(5))
        for sign in (1, -1)
        for b in range(5)
    )
    assert autos == expected


def test_gram_automorphisms_fix_diagonal():
    g = gram(build_frame(GeneratorSet(M7, (1, 2, 4))))
    for sigma in gram_automorphisms(g):
        for j in range(7):
            assert g.label(sigma[j], sigma[j]) == g.label(j, j)


def test_gram_automorphism_budget():
    with pytest.raises(BudgetExceededError):
        gram_automorphisms(
            gram(build_frame(GeneratorSet(PrimeModulus(37), (1, 2)))), max_N=31
        )
    # degenerate label structure is refused rather than enumerated
    with pytest.raises(BudgetExceededError):
        gram_automorphisms(gram(build_frame(GeneratorSet(M5, (1, 2, 3, 4)))))


def test_full_symmetry_group_examples():
    r = full_symmetry_group(GeneratorSet(M5, (1, 2)))
    assert r.full_group_order == 5 and r.conjecture_holds
    r = full_symmetry_group(GeneratorSet(M5, (1, 4)))
    assert r.full_group_order == 10 and r.conjecture_holds
    r = full_symmetry_group(GeneratorSet(M7, (0, 1, 6)))
    assert r.subgroup_order == 14
    assert r.full_group_order == 14


def test_full_group_closure_and_containment():
    for elems, m in [((1, 2), M5), ((1, 4), M5), ((0, 1, 6), M7), ((1, 2, 4), M7)]:
        r = full_symmetry_group(GeneratorSet(m, elems))
        N = m.N
        perms = set(r.full_permutations)
        assert set(r.subgroup_permutations) <= perms
        for a in perms:
            inv = tuple(sorted(range(N), key=lambda j: a[j]))
            assert inv in perms
            for b in perms:
                assert tuple(a[b[j]] for j in range(N)) in perms
        # necessity: realized permutations preserve the Gram labels
        autos = set(gram_automorphisms(gram(build_frame(GeneratorSet(m, elems)))))
        assert perms <= autos


def test_corollary_trivial_stabilizer_gives_shifts():
    for N, d in [(5, 2), (7, 3), (11, 2)]:
        m = PrimeModulus(N)
        for rec in enumerate_orbits(m, d):
            if rec.stab_order != 1:
                continue
            r = full_symmetry_group(rec.rep)
            assert r.full_group_order == N
            shifts = {tuple((j + b) % N for j in range(N)) for b in range(N)}
            assert set(r.full_permutations) == shifts


def test_simplex_counterexample():
    """The all-units set is a regular simplex; every permutation lifts to a
    unitary, so the guaranteed subgroup is strictly smaller.  Cross-check
    the closed form against exhaustive verification at N=5."""
    r = full_symmetry_group(GeneratorSet(M5, (1, 2, 3, 4)))
    assert r.subgroup_order == 20
    assert r.full_group_order == 120
    assert r.conjecture_holds is False

    frame = build_frame(GeneratorSet(M5, (1, 2, 3, 4)))
    every = np.array(list(permutations(range(5))), dtype=np.int64)
    assert int(_verify_permutations(frame, every).sum()) == 120


def test_full_dimension_closed_form():
    r = full_symmetry_group(GeneratorSet(M5, (0, 1, 2, 3, 4)))
    assert r.subgroup_order == 20
    assert r.full_group_order == 120
    # exhaustive cross-check at N=3: all 6 permutations are symmetries
    m3 = PrimeModulus(3)
    frame = build_frame(GeneratorSet(m3, (0, 1, 2)))
    every = np.array(list(permutations(range(3))), dtype=np.int64)
    assert int(_verify_permutations(frame, every).sum()) == 6


def test_full_group_equals_exhaustive_search_at_n7():
    """The backtracking search plus reconstruction must agree with filtering
    all 5040 permutations through the exact reconstruction check."""
    every = np.array(list(permutations(range(7))), dtype=np.int64)
    for elems in [(1, 2), (0, 1, 6), (1, 2, 4), (0, 1, 2, 4)]:
        s = GeneratorSet(M7, elems)
        frame = build_frame(s)
        keep = _verify_permutations(frame, every)
        exhaustive = {
            tuple(sig) for sig, ok in zip(every.tolist(), keep) if ok
        }
        r = full_symmetry_group(s)
        assert set(r.full_permutations) == exhaustive
        assert r.full_group_order == len(exhaustive)


def test_verify_permutations_rejects_non_symmetries():
    frame = build_frame(GeneratorSet(M5, (1, 2)))
    every = np.array(list(permutations(range(5))), dtype=np.int64)
    keep = _verify_permutations(frame, every)
    assert int(keep.sum()) == 5


def test_reconstructed_element_identity():
    frame = build_frame(GeneratorSet(M5, (1, 2)))
    ident = reconstructed_element(frame, tuple(range(5)))
    assert ident.denominator == 5
    one = ScaledCyclotomic(root_power(M5, 0).scale(5), 5)
    assert ident.entry(0, 0) == one
    assert ident.entry(0, 1).numerator.is_zero


def test_conjecture_scan():
    report = conjecture_scan(M7, 3)
    assert len(report.rows) == 7
    assert not report.counterexamples
    assert all(r.conjecture_holds for r in report.rows)

    report = conjecture_scan(M5, 2)
    assert len(report.rows) == 3

    report = conjecture_scan(PrimeModulus(11), 2)
    assert len(report.rows) == 6

    report = conjecture_scan(M5, 4)
    assert [r.conjecture_holds for r in report.rows] == [True, False]
    assert len(report.counterexamples) == 1
    assert report.counterexamples[0].rep.elems == (1, 2, 3, 4)


def test_symmetry_budget():
    with pytest.raises(BudgetExceededError):
        full_symmetry_group(GeneratorSet(PrimeModulus(37), (1, 2)), max_N=31)
