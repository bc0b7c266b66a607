"""End-to-end acceptance checks, one per headline claim.

Each test prints a single PASS line (visible with -s or in the captured
output) after its assertions; timing bounds are asserted where stated.
"""

import itertools
import random
import time

from relalg.core import generate_subalgebra, check_axioms
from relalg.cylindric import (
    build_ca,
    check_cylindric_basis,
    pair_product_condition,
)
from relalg.families import (
    build_e23,
    build_monk,
    check_special_extension,
    e23_subalgebra,
    find_flexible,
    lift_blocks,
)
from relalg.represent import (
    build_representation,
    cyclic_group_labeling,
    enumerate_basic_matrices,
    mono_free_search,
    verify_representation,
)
from relalg.thinned import (
    ThinnedSpec,
    atom_product,
    build_fragment,
    is_cycle,
    tailed_product,
    verify_base_embedding,
)

from conftest import valid_alpha_beta


def report(line):
    print(f"[PASS] {line}", flush=True)


def test_acceptance_01_e23_axioms():
    for q in range(4, 9):
        t0 = time.monotonic()
        rep = check_axioms(build_e23(q))
        dt = time.monotonic() - t0
        assert rep.is_ra and rep.is_symmetric and rep.is_integral
        assert dt < 1.0, f"q={q} took {dt:.2f}s"
    report("1: axioms for all-2-3-cycle algebras, q = 4..8, each under 1 s")


def test_acceptance_02_z13_representation():
    t0 = time.monotonic()
    lab, _ = cyclic_group_labeling(
        13,
        {
            "e1": frozenset({1, 5, 8, 12}),
            "e2": frozenset({2, 3, 10, 11}),
            "e3": frozenset({4, 6, 7, 9}),
        },
        "e0",
    )
    rep = verify_representation(build_e23(4), lab)
    dt = time.monotonic() - t0
    assert rep.is_complete_square
    assert dt < 1.0
    report("2: 13-point cyclic labeling is a complete square representation")


def test_acceptance_03_flexible_trio_detection(seven_atom_example):
    flexible, trios = find_flexible(seven_atom_example)
    assert flexible == [] and trios == [("a", "b", "c")]
    block_alg, _ = e23_subalgebra(7, 0, 3).block_algebra()
    flexible, trios = find_flexible(block_alg)
    assert len(flexible) == 3 and trios == [tuple(sorted(flexible))]
    report("3: trio detection on the 7-atom example and the (0,3) subalgebra")


def test_acceptance_04_split_special_extension():
    rng = random.Random(41)
    failures = 0
    for q in range(4, 8):
        base = build_e23(q)
        vectors = [{a: 2 for a in base.diversity_atoms}]
        for _ in range(50):
            vectors.append({a: rng.choice([1, 2]) for a in base.diversity_atoms})
        subs = [e23_subalgebra(q, a, b) for a, b in valid_alpha_beta(q)]
        for mult in vectors:
            monk = build_monk(q, mult)
            for sub in subs:
                lifted = lift_blocks(monk.cover, sub, monk.algebra)
                ok, _ = check_special_extension(monk.algebra, lifted)
                failures += not ok
    assert failures == 0
    report("4: split algebras specially extend every block subalgebra "
           "(q = 4..7, 50 random multiplicity vectors + all-2 each)")


def test_acceptance_05_fragment_closure(spec03):
    t0 = time.monotonic()
    sizes = {}
    for n in range(4):
        for kind in ("bn", "dn"):
            frag = build_fragment(spec03, n, kind)
            assert frag.report.is_ra, (n, kind)
            sizes[(kind, n)] = len(frag.algebra.atoms)
    dt = time.monotonic() - t0
    assert sizes[("bn", 2)] == 16
    assert sizes[("dn", 1)] == 13
    assert dt < 10.0
    report("5: exact closure of all fragments n = 0..3, both kinds, "
           f"16/13 atom counts, {dt:.1f} s")


def test_acceptance_06_base_embedding(spec03):
    for n in range(4):
        ok, phi, witness = verify_base_embedding(spec03, n)
        assert ok, (n, witness)
    report("6: base algebra embeds into every D(n) fragment, n <= 3")


def test_acceptance_07_trio_lift(spec03):
    frag = build_fragment(spec03, 2, "bn")
    _, trios = find_flexible(frag.algebra)
    assert trios == [("J(e1+e2)@2", "J(e3+e4)@2", "J(e5+e6)@2")]
    report("7: the block tails at level 2 form the fragment's flexible trio")


def test_acceptance_08_representation_build(trio_block_algebra):
    trio = ("e1+e2", "e3+e4", "e5+e6")
    res = build_representation(trio_block_algebra, trio, points=40, rounds=1)
    assert res.labeling.n <= 40
    assert res.defects == []
    rep = verify_representation(trio_block_algebra, res.labeling)
    assert rep.sound
    report(f"8: defect-free sound labeling on {res.labeling.n} points "
           "(40-point budget, one round)")


def test_acceptance_09_mono_free_search():
    t0 = time.monotonic()
    assert mono_free_search(2, 5) is not None
    assert mono_free_search(2, 6) is None
    col = mono_free_search(3, 13)
    assert col is not None
    for i, j, l in itertools.combinations(range(13), 3):
        assert not (col[(i, j)] == col[(j, l)] == col[(i, l)])
    dt = time.monotonic() - t0
    assert dt < 30.0
    report(f"9: triangle-free colorings K5 yes / K6 proven no / K13 yes, {dt:.1f} s")


def test_acceptance_10_oracle_equivalence():
    window, indices = 8, 4
    checked = 0
    for q in range(4, 8):
        parent = build_e23(q)
        for alpha, beta in valid_alpha_beta(q):
            spec = ThinnedSpec(parent, e23_subalgebra(q, alpha, beta))
            for x, y in itertools.product(spec.diversity_atoms, repeat=2):
                for i, j in itertools.product(range(indices), repeat=2):
                    got = atom_product(spec, x, i, y, j).truncate(window)
                    atoms = {
                        (z, k)
                        for z in spec.diversity_atoms
                        for k in range(window)
                        if is_cycle(spec, (x, i), (y, j), (z, k))
                    }
                    assert got == ((x == y and i == j), frozenset(atoms))
                    checked += 1
            # fragment tables agree with the closed-form products
            frag = build_fragment(spec, 1, "dn")
            for n1, e1 in frag.elements.items():
                for n2, e2 in frag.elements.items():
                    joined = spec.zero()
                    for n3 in frag.algebra.table[(n1, n2)]:
                        joined = joined | frag.elements[n3]
                    assert joined == tailed_product(spec, e1, e2)
    report(f"10: closed-form products match the raw cycle rule and the "
           f"fragment tables ({checked} atom pairs, zero mismatches)")


def test_acceptance_11_cylindric_slice(spec03):
    t0 = time.monotonic()
    r = pair_product_condition(build_e23(7), 3)
    assert r.holds and r.mode == "exhaustive"

    d2 = build_fragment(spec03, 2, "dn")
    true_atoms = [a for a in d2.algebra.atoms if "@" in a and not a.startswith("J(")]
    r = pair_product_condition(d2.algebra, 4, atoms=true_atoms)
    assert r.holds and r.mode == "exhaustive"

    e234 = build_e23(4)
    minimal, _ = generate_subalgebra(e234, [e234.diversity])
    r = pair_product_condition(minimal, 5)
    assert r.holds and r.mode == "exhaustive"

    ms = enumerate_basic_matrices(e234, 3)
    ok, witness = check_cylindric_basis(e234, 3, ms)
    assert ok, witness
    _, ca_report = build_ca(e234, 3, ms)
    assert ca_report.passed, ca_report.failures
    dt = time.monotonic() - t0
    assert dt < 60.0
    report(f"11: pair products, cylindric basis, and 3-dimensional "
           f"cylindrification axioms all hold, {dt:.1f} s")
