import itertools

import pytest

from relalg.core import AtomStructure, build_algebra
from relalg.families import e23_subalgebra, build_e23
from relalg.thinned import ThinnedSpec


@pytest.fixture(scope="session")
def e234():
    return build_e23(4)


@pytest.fixture(scope="session")
def e237():
    return build_e23(7)


@pytest.fixture(scope="session")
def sub03():
    return e23_subalgebra(7, 0, 3)


@pytest.fixture(scope="session")
def spec03(e237, sub03):
    return ThinnedSpec(e237, sub03)


@pytest.fixture(scope="session")
def trio_block_algebra(sub03):
    alg, _ = sub03.block_algebra()
    return alg


@pytest.fixture(scope="session")
def seven_atom_example():
    """Seven symmetric atoms; every diversity cycle present except the
    three 2-cycles [a,d,d], [b,e,e], [c,f,f].  Has the trio (a, b, c)
    but no flexible atoms."""
    div = ("a", "b", "c", "d", "e", "f")
    reps = {("1'", "1'", "1'")} | {("1'", x, x) for x in div}
    removed = {("a", "d", "d"), ("b", "e", "e"), ("c", "f", "f")}
    reps |= set(itertools.combinations_with_replacement(div, 3)) - removed
    return build_algebra(AtomStructure.build(("1'",) + div, {"1'"}, reps))


def valid_alpha_beta(q):
    """All (alpha, beta) that really partition the q-1 diversity atoms."""
    out = []
    for alpha in range(q):
        for beta in range(q):
            if not (alpha + 2 * beta < q and 0 < alpha + beta):
                continue
            if beta == 0 and alpha != q - 1:
                continue  # singletons alone must cover everything
            out.append((alpha, beta))
    return out
