"""Relational/cylindric bases over basic matrices, and the complex
algebra Ca(M) of a matrix set with its cylindric-algebra axiom check.

The cylindrification c_i is the complex operator of the relation
"agree up to i" and the diagonal d_ij is the set of matrices whose
(i, j) entry lies below the identity.  Because "agree up to i" is an
equivalence relation on basic matrices and c_i is completely additive,
each axiom reduces to a finite check on matrices or on equivalence
classes; the reductions used are stated axiom by axiom below.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import FiniteAlgebra
from .represent import BasicMatrix


def agree_up_to(mu: BasicMatrix, nu: BasicMatrix, i: int) -> bool:
    """Entries equal wherever neither index is i."""
    k = mu.k
    return all(
        mu[l, m] == nu[l, m]
        for l in range(k)
        for m in range(k)
        if l != i and m != i
    )


def _key_off(m: BasicMatrix, k: int, skip: tuple[int, ...]) -> tuple:
    """Entries of m with no index in skip; equal keys = agree up to skip."""
    return tuple(
        m[l, r]
        for l in range(k)
        for r in range(k)
        if l not in skip and r not in skip
    )


def agree_up_to_pair(mu: BasicMatrix, nu: BasicMatrix, i: int, j: int) -> bool:
    k = mu.k
    return all(
        mu[l, m] == nu[l, m]
        for l in range(k)
        for m in range(k)
        if l not in (i, j) and m not in (i, j)
    )


@dataclass
class MatrixStructure:
    """A set of k-by-k basic matrices with the agree-up-to relations and
    the diagonal sets, the carrier of Ca(M)."""

    k: int
    matrices: tuple[BasicMatrix, ...]
    _ti_class: list[dict[BasicMatrix, int]] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        for m in self.matrices:
            if m.k != self.k:
                raise ValueError("matrix dimension mismatch")
        # classes of "agree up to i": key a matrix by its entries off index i
        for i in range(self.k):
            keys: dict[tuple, int] = {}
            cls: dict[BasicMatrix, int] = {}
            for m in self.matrices:
                key = tuple(
                    m[l, r]
                    for l in range(self.k)
                    for r in range(self.k)
                    if l != i and r != i
                )
                cls[m] = keys.setdefault(key, len(keys))
            self._ti_class.append(cls)

    def ti_related(self, mu: BasicMatrix, nu: BasicMatrix, i: int) -> bool:
        return self._ti_class[i][mu] == self._ti_class[i][nu]

    def eij(self, alg: FiniteAlgebra, i: int, j: int) -> frozenset[BasicMatrix]:
        return frozenset(
            m for m in self.matrices if m[i, j] in alg.structure.identity
        )

    def c(self, i: int, x: frozenset[BasicMatrix]) -> frozenset[BasicMatrix]:
        classes = {self._ti_class[i][m] for m in x}
        return frozenset(
            m for m in self.matrices if self._ti_class[i][m] in classes
        )


BasisWitness = tuple[str, tuple]


def check_relational_basis(
    alg: FiniteAlgebra, k: int, matrices: list[BasicMatrix] | tuple[BasicMatrix, ...]
) -> tuple[bool, BasisWitness | None]:
    """R0: every atom appears at position (0, 1); R1: every product
    witness (x, y) for mu(i, j) is realized by a matrix agreeing with mu
    up to any chosen third index l."""
    if k < 3:
        raise ValueError("bases are defined for k >= 3")
    ms = list(matrices)
    for a in alg.atoms:
        if not any(m[0, 1] == a for m in ms):
            return False, ("R0", (a,))
    # index: entries off l  ->  witness pairs (nu[i, l], nu[l, j])
    for i, j in itertools.product(range(k), repeat=2):
        for l in range(k):
            if l in (i, j):
                continue
            seen: dict[tuple, set[tuple[str, str]]] = {}
            for nu in ms:
                seen.setdefault(_key_off(nu, k, (l,)), set()).add(
                    (nu[i, l], nu[l, j])
                )
            for mu in ms:
                pairs = seen[_key_off(mu, k, (l,))]
                for x in alg.atoms:
                    for y in alg.atoms:
                        if mu[i, j] in alg.table[(x, y)] and (x, y) not in pairs:
                            return False, ("R1", (mu, i, j, x, y, l))
    return True, None


def check_cylindric_basis(
    alg: FiniteAlgebra, k: int, matrices: list[BasicMatrix] | tuple[BasicMatrix, ...]
) -> tuple[bool, BasisWitness | None]:
    """C0: every cycle a <= b;c has a witness matrix at (0,1), (0,2), (2,1);
    C1: amalgamation of matrices agreeing up to i, j; C2: closure under
    the substitutions mu[i/j]."""
    if k < 3:
        raise ValueError("bases are defined for k >= 3")
    ms = list(matrices)
    mset = set(ms)
    # substitution closure first: it is the cheapest check and the usual
    # way a filtered matrix set reveals itself (mu[i/j] has an identity
    # entry off the diagonal)
    for mu in ms:
        for i, j in itertools.product(range(k), repeat=2):
            if mu.substitute(i, j) not in mset:
                return False, ("C2", (mu, i, j))
    corners = {(m[0, 1], m[0, 2], m[2, 1]) for m in ms}
    for b in alg.atoms:
        for c in alg.atoms:
            for a in alg.table[(b, c)]:
                if (a, b, c) not in corners:
                    return False, ("C0", (a, b, c))
    # C1 via agree-up-to keys: an amalgam of mu and nu at (i, j) exists
    # iff some rho shares mu's off-i entries and nu's off-j entries
    for i, j in itertools.permutations(range(k), 2):
        ki = {m: _key_off(m, k, (i,)) for m in ms}
        kj = {m: _key_off(m, k, (j,)) for m in ms}
        have = {(ki[rho], kj[rho]) for rho in ms}
        groups: dict[tuple, list[BasicMatrix]] = {}
        for m in ms:
            groups.setdefault(_key_off(m, k, (i, j)), []).append(m)
        for group in groups.values():
            for mu in group:
                for nu in group:
                    if (ki[mu], kj[nu]) not in have:
                        return False, ("C1", (mu, nu, i, j))
    return True, None


@dataclass
class PairProductReport:
    holds: bool
    mode: str  # "exhaustive" | "evidence"
    checked: int
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "mode": self.mode,
            "checked": self.checked,
            "witness": list(self.witness) if self.witness else None,
        }


def pair_product_condition(
    alg: FiniteAlgebra,
    n: int,
    atoms: list[str] | None = None,
    budget: int = 2_000_000,
    samples: int = 20_000,
    seed: int = 0,
) -> PairProductReport:
    """For every choice of n-2 pairs of diversity atoms (u_i, v_i), is the
    meet of the products u_i;v_i nonzero?

    Exhaustive when the number of choices fits the budget; otherwise a
    seeded random sample, reported as mode "evidence", never "verified".
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    div = list(atoms) if atoms is not None else list(alg.diversity_atoms)
    pairs = [(u, v) for u in div for v in div]
    products = {p: alg.table[p] for p in pairs}
    total = len(pairs) ** (n - 2)

    def meet_nonzero(choice: tuple[tuple[str, str], ...]) -> bool:
        acc: frozenset[str] | None = None
        for p in choice:
            acc = products[p] if acc is None else acc & products[p]
            if not acc:
                return False
        return bool(acc)

    if total <= budget:
        checked = 0
        for choice in itertools.product(pairs, repeat=n - 2):
            checked += 1
            if not meet_nonzero(choice):
                return PairProductReport(False, "exhaustive", checked, choice)
        return PairProductReport(True, "exhaustive", checked)
    rng = random.Random(seed)
    for checked in range(1, samples + 1):
        choice = tuple(rng.choice(pairs) for _ in range(n - 2))
        if not meet_nonzero(choice):
            return PairProductReport(False, "evidence", checked, choice)
    return PairProductReport(True, "evidence", samples)


@dataclass
class CaReport:
    passed: bool
    failures: list[tuple[str, tuple]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failures": [[ax, [repr(w) for w in ws]] for ax, ws in self.failures],
        }


@dataclass
class CylAlgebra:
    structure: MatrixStructure
    algebra: FiniteAlgebra
    diagonals: dict[tuple[int, int], frozenset[BasicMatrix]]

    @property
    def carrier_atoms(self) -> tuple[BasicMatrix, ...]:
        return self.structure.matrices

    def c(self, i: int, x: frozenset[BasicMatrix]) -> frozenset[BasicMatrix]:
        return self.structure.c(i, x)

    def d(self, i: int, j: int) -> frozenset[BasicMatrix]:
        return self.diagonals[(i, j)]


def build_ca(
    alg: FiniteAlgebra,
    k: int,
    matrices: list[BasicMatrix] | tuple[BasicMatrix, ...],
    matrix_budget: int = 4096,
) -> tuple[CylAlgebra, CaReport]:
    """Ca(M) plus a check of the k-dimensional cylindric-algebra axioms.

    Reductions used (all exact, justified by complete additivity of c_i
    and by "agree up to i" being an equivalence relation):
      * c_i 0 = 0 and x <= c_i x: by construction / reflexivity.
      * c_i(x . c_i y) = c_i x . c_i y: holds for the complex algebra of
        any equivalence relation; we verify the equivalence directly.
      * c_i c_j x = c_j c_i x: checked on singletons (both sides additive).
      * d_ii = 1: every diagonal entry is an identity atom (B0).
      * d_ij = c_k(d_ik . d_kj): checked as a set equation.
      * c_i(d_ij . x) . c_i(d_ij . -x) = 0 for i != j: equivalent to each
        agree-up-to-i class containing at most one matrix of d_ij.
    """
    if not matrices:
        raise ValueError("matrix set must be nonempty")
    if len(matrices) > matrix_budget:
        raise ValueError(f"matrix set of size {len(matrices)} exceeds budget")
    struct = MatrixStructure(k, tuple(matrices))
    diags = {
        (i, j): struct.eij(alg, i, j)
        for i in range(k)
        for j in range(k)
    }
    ca = CylAlgebra(struct, alg, diags)
    failures: list[tuple[str, tuple]] = []

    # reflexivity + symmetry + transitivity of the agree-up-to relations
    # (partition-based construction gives them; verified against the
    # pairwise definition as a sanity check)
    for i in range(k):
        for mu, nu in itertools.combinations(struct.matrices, 2):
            if struct.ti_related(mu, nu, i) != agree_up_to(mu, nu, i):
                failures.append(("C3-equivalence", (i, mu, nu)))
                break

    for i in range(k):
        for mu in struct.matrices:
            if mu not in struct.c(i, frozenset({mu})):
                failures.append(("C2-extensivity", (i, mu)))
                break

    for i, j in itertools.combinations(range(k), 2):
        done = False
        for mu in struct.matrices:
            x = frozenset({mu})
            if struct.c(i, struct.c(j, x)) != struct.c(j, struct.c(i, x)):
                failures.append(("C4-commutativity", (i, j, mu)))
                done = True
                break
        if done:
            break

    for i in range(k):
        if ca.d(i, i) != frozenset(struct.matrices):
            failures.append(("C5-diagonal", (i,)))

    for i, j in itertools.permutations(range(k), 2):
        for l in range(k):
            if l in (i, j):
                continue
            if ca.d(i, j) != struct.c(l, ca.d(i, l) & ca.d(l, j)):
                failures.append(("C6-diagonal-decomposition", (i, j, l)))

    for i, j in itertools.permutations(range(k), 2):
        per_class: dict[int, int] = {}
        for mu in ca.d(i, j):
            cls = struct._ti_class[i][mu]
            per_class[cls] = per_class.get(cls, 0) + 1
            if per_class[cls] > 1:
                failures.append(("C7-diagonal-uniqueness", (i, j, cls)))
                break

    return ca, CaReport(not failures, failures)
