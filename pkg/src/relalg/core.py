"""Finite atomic relation-type algebras presented by atom structures.

An atom structure is a finite list of atoms together with an identity
subset, an involutive converse map, and a ternary cycle relation C.  The
complex algebra over it has elements = subsets of atoms, with

    X ; Y = {z : exists x in X, y in Y with (x, y, z) in C}.

Because the complex operators are completely additive over atoms, every
equational axiom can be decided by checking finitely many atom
instances; that is the only tractable route (element-level checking
would be exponential in the number of atoms).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

Element = frozenset[str]
Triple = tuple[str, str, str]


class StructureError(ValueError):
    """An atom structure violates one of its invariants."""


def close_cycle(x: str, y: str, z: str, converse: dict[str, str]) -> frozenset[Triple]:
    """The six Peircean transforms of (x, y, z), deduplicated.

    converse must be involutive on the atom set containing x, y, z.
    """
    for a in (x, y, z):
        if a not in converse:
            raise StructureError(f"unknown atom name {a!r}")
    c = converse
    return frozenset(
        {
            (x, y, z),
            (c[x], z, y),
            (y, c[z], c[x]),
            (c[y], c[x], c[z]),
            (c[z], x, c[y]),
            (z, c[y], x),
        }
    )


def _canonical_reps(cycles: frozenset[Triple], converse: dict[str, str],
                    index: dict[str, int]) -> list[Triple]:
    """One representative per cycle orbit, lexicographically least by atom index."""
    seen: set[Triple] = set()
    reps: list[Triple] = []
    key = lambda t: (index[t[0]], index[t[1]], index[t[2]])
    for t in sorted(cycles, key=key):
        if t in seen:
            continue
        orbit = close_cycle(*t, converse)
        seen |= orbit
        reps.append(min(orbit, key=key))
    return sorted(set(reps), key=key)


@dataclass
class AtomStructure:
    atoms: tuple[str, ...]
    identity: Element
    converse: dict[str, str]
    cycles: frozenset[Triple]

    def __post_init__(self) -> None:
        if len(set(self.atoms)) != len(self.atoms):
            raise StructureError("atom names are not unique")
        atomset = set(self.atoms)
        if not self.identity:
            raise StructureError("identity set is empty")
        if not self.identity <= atomset:
            raise StructureError("identity contains unknown atoms")
        if set(self.converse) != atomset:
            raise StructureError("converse map must be total on the atoms")
        for a in self.atoms:
            if self.converse[self.converse[a]] != a:
                raise StructureError(f"converse not involutive at {a!r}")
        for t in self.cycles:
            for a in t:
                if a not in atomset:
                    raise StructureError(f"cycle {t} mentions unknown atom {a!r}")
        closed = set()
        for t in self.cycles:
            closed |= close_cycle(*t, self.converse)
        if closed != set(self.cycles):
            missing = min(closed - set(self.cycles))
            warnings.warn(
                f"cycle set was not closed under the Peircean transforms; "
                f"closing it (added e.g. {missing})",
                stacklevel=2,
            )
            self.cycles = frozenset(closed)

    @classmethod
    def build(
        cls,
        atoms: tuple[str, ...] | list[str],
        identity: set[str] | frozenset[str],
        cycle_reps: set[Triple] | frozenset[Triple] | list[Triple],
        converse: dict[str, str] | None = None,
    ) -> "AtomStructure":
        """Build from representative triples, closing under the six transforms."""
        atoms = tuple(atoms)
        if converse is None:
            converse = {a: a for a in atoms}
        closed: set[Triple] = set()
        for t in cycle_reps:
            closed |= close_cycle(*t, converse)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return cls(atoms, frozenset(identity), dict(converse), frozenset(closed))

    @property
    def index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.atoms)}

    def canonical_cycle_reps(self) -> list[Triple]:
        return _canonical_reps(self.cycles, self.converse, self.index)

    @property
    def is_symmetric(self) -> bool:
        return all(self.converse[a] == a for a in self.atoms)


@dataclass
class FiniteAlgebra:
    """Complex algebra of an atom structure, with its atom-product table."""

    structure: AtomStructure
    table: dict[tuple[str, str], Element] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.table:
            cyc = self.structure.cycles
            prods: dict[tuple[str, str], set[str]] = {
                (x, y): set() for x in self.atoms for y in self.atoms
            }
            for (x, y, z) in cyc:
                prods[(x, y)].add(z)
            self.table = {k: frozenset(v) for k, v in prods.items()}
        self._index = self.structure.index

    # -- carriers -----------------------------------------------------
    @property
    def atoms(self) -> tuple[str, ...]:
        return self.structure.atoms

    @property
    def identity_element(self) -> Element:
        return frozenset(self.structure.identity)

    @property
    def top(self) -> Element:
        return frozenset(self.atoms)

    @property
    def zero(self) -> Element:
        return frozenset()

    @property
    def diversity(self) -> Element:
        return self.top - self.identity_element

    @property
    def diversity_atoms(self) -> tuple[str, ...]:
        return tuple(a for a in self.atoms if a not in self.structure.identity)

    # -- operations (completely additive over atoms) -------------------
    def product(self, x: Element, y: Element) -> Element:
        out: set[str] = set()
        for a in x:
            for b in y:
                out |= self.table[(a, b)]
        return frozenset(out)

    def converse_el(self, x: Element) -> Element:
        return frozenset(self.structure.converse[a] for a in x)

    def complement(self, x: Element) -> Element:
        return self.top - x

    def atom_key(self, a: str) -> int:
        return self._index[a]

    def sorted_atoms(self, x: Element) -> list[str]:
        return sorted(x, key=self.atom_key)

    def el(self, *names: str) -> Element:
        for n in names:
            if n not in self._index:
                raise StructureError(f"unknown atom name {n!r}")
        return frozenset(names)


def build_algebra(s: AtomStructure) -> FiniteAlgebra:
    """Populate the atom-product table of the complex algebra over s."""
    return FiniteAlgebra(s)


@dataclass
class AxiomReport:
    is_na: bool
    is_associative: bool
    is_symmetric: bool
    is_integral: bool
    counterexamples: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    @property
    def is_ra(self) -> bool:
        return self.is_na and self.is_associative

    def to_dict(self) -> dict:
        return {
            "is_na": self.is_na,
            "is_associative": self.is_associative,
            "is_ra": self.is_ra,
            "is_symmetric": self.is_symmetric,
            "is_integral": self.is_integral,
            "counterexamples": [[ax, list(w)] for ax, w in self.counterexamples],
        }


def check_axioms(alg: FiniteAlgebra) -> AxiomReport:
    """Decide NA / RA / symmetric / integral at the atom level.

    Complete additivity of the complex operators reduces every equational
    axiom to atom instances: the identity law and Peircean transforms are
    checked per atom / per triple, and associativity over all atom
    triples.  Witnesses are chosen by lowest atom index, associativity
    reports only the lexicographically least failing triple.
    """
    s = alg.structure
    counterexamples: list[tuple[str, tuple[str, ...]]] = []

    # converse involution (re-checked so hand-built tables are covered too)
    for a in s.atoms:
        if s.converse[s.converse[a]] != a:
            counterexamples.append(("converse-involution", (a,)))
            break

    # Peircean law: every stored triple has all six transforms stored
    peirce_ok = True
    key = lambda t: tuple(alg.atom_key(a) for a in t)
    for t in sorted(s.cycles, key=key):
        if not close_cycle(*t, s.converse) <= s.cycles:
            counterexamples.append(("peircean-closure", t))
            peirce_ok = False
            break

    # identity law: 1' ; x = x = x ; 1' for every atom
    ident = alg.identity_element
    id_ok = True
    for a in s.atoms:
        if alg.product(ident, frozenset({a})) != frozenset({a}) or alg.product(
            frozenset({a}), ident
        ) != frozenset({a}):
            counterexamples.append(("identity-law", (a,)))
            id_ok = False
            break

    is_na = peirce_ok and id_ok and not any(
        ax == "converse-involution" for ax, _ in counterexamples
    )

    is_associative = True
    for x, y, z in itertools.product(s.atoms, repeat=3):
        lhs = alg.product(alg.product(frozenset({x}), frozenset({y})), frozenset({z}))
        rhs = alg.product(frozenset({x}), alg.product(frozenset({y}), frozenset({z})))
        if lhs != rhs:
            counterexamples.append(("associativity", (x, y, z)))
            is_associative = False
            break

    is_symmetric = s.is_symmetric
    if not is_symmetric:
        a = next(a for a in s.atoms if s.converse[a] != a)
        counterexamples.append(("symmetric", (a,)))

    # integral iff 1' is a single atom and atoms have no zero divisors
    # (equivalent for a finite NA satisfying the identity law)
    is_integral = len(ident) == 1
    if not is_integral:
        counterexamples.append(("integral-identity-atom", tuple(alg.sorted_atoms(ident))))
    else:
        for x, y in itertools.product(s.atoms, repeat=2):
            if not alg.table[(x, y)]:
                counterexamples.append(("integral-zero-divisor", (x, y)))
                is_integral = False
                break

    return AxiomReport(is_na, is_associative, is_symmetric, is_integral, counterexamples)


def _refine(blocks: list[frozenset[str]], cutter: Element) -> list[frozenset[str]]:
    out: list[frozenset[str]] = []
    for b in blocks:
        inside, outside = b & cutter, b - cutter
        if inside:
            out.append(inside)
        if outside:
            out.append(outside)
    return out


def generate_subalgebra(
    alg: FiniteAlgebra, gens: list[Element]
) -> tuple[FiniteAlgebra, dict[str, Element]]:
    """Least subalgebra containing gens, as a quotient-style finite algebra.

    The atoms of the result are the minimal nonzero elements, computed by
    partition refinement: refine the atom set by the generators, then by
    converses and pairwise products of blocks, to a fixed point.  Returns
    the subalgebra plus the inclusion map (subalgebra atom name -> parent
    element).
    """
    blocks: list[frozenset[str]] = [frozenset(alg.atoms)]
    blocks = _refine(blocks, alg.identity_element)
    for g in gens:
        blocks = _refine(blocks, frozenset(g))

    while True:
        cutters: list[Element] = []
        for b in blocks:
            cutters.append(alg.converse_el(b))
        for b1 in blocks:
            for b2 in blocks:
                cutters.append(alg.product(b1, b2))
        new_blocks = blocks
        for c in cutters:
            new_blocks = _refine(new_blocks, c)
        if len(new_blocks) == len(blocks):
            break
        blocks = new_blocks

    def block_name(b: frozenset[str]) -> str:
        return "+".join(alg.sorted_atoms(b))

    blocks = sorted(blocks, key=lambda b: alg.atom_key(alg.sorted_atoms(b)[0]))
    names = {block_name(b): b for b in blocks}
    by_atom = {a: block_name(b) for b in blocks for a in b}

    cycles: set[Triple] = set()
    for b1 in blocks:
        p1 = block_name(b1)
        for b2 in blocks:
            p2 = block_name(b2)
            prod = alg.product(b1, b2)
            for b3 in blocks:
                if b3 <= prod:
                    cycles.add((p1, p2, block_name(b3)))
    converse = {block_name(b): by_atom[next(iter(alg.converse_el(b)))] for b in blocks}
    identity = frozenset(
        block_name(b) for b in blocks if b <= alg.identity_element
    )
    sub = FiniteAlgebra(
        AtomStructure(
            tuple(block_name(b) for b in blocks), identity, converse, frozenset(cycles)
        )
    )
    return sub, names


def find_embedding(
    src: FiniteAlgebra, dst: FiniteAlgebra
) -> dict[str, Element] | None:
    """Exhaustive search for an algebra embedding of src into dst.

    A returned map sends the atoms of src to disjoint nonzero elements of
    dst that jointly partition the atoms of dst, preserves identity and
    converse, and satisfies phi(x);phi(y) = union of phi(z) over z <= x;y
    for all atom pairs.  None means no embedding exists.
    """
    src_atoms = list(src.atoms)
    if len(src_atoms) > len(dst.atoms):
        return None
    phi: dict[str, Element] = {}

    def consistent(newest: str) -> bool:
        img_n = phi[newest]
        # identity preservation, atom by atom
        if newest in src.structure.identity:
            if not img_n <= dst.identity_element:
                return False
        elif img_n & dst.identity_element:
            return False
        # converse
        cn = src.structure.converse[newest]
        if cn in phi and dst.converse_el(img_n) != phi[cn]:
            return False
        # partial product preservation over assigned atoms
        for x in phi:
            for y in phi:
                prod = dst.product(phi[x], phi[y])
                allowed = src.table[(x, y)]
                for z in phi:
                    if z in allowed:
                        if not phi[z] <= prod:
                            return False
                    elif phi[z] & prod:
                        return False
        return True

    def rec(i: int, remaining: list[str]) -> bool:
        if i == len(src_atoms):
            return not remaining
        if len(src_atoms) - i > len(remaining):
            return False
        a = src_atoms[i]
        ca = src.structure.converse[a]
        if ca in phi:
            img = dst.converse_el(phi[ca])
            if not img <= frozenset(remaining):
                return False
            phi[a] = img
            if consistent(a) and rec(i + 1, [r for r in remaining if r not in img]):
                return True
            del phi[a]
            return False
        max_size = len(remaining) - (len(src_atoms) - i - 1)
        for size in range(1, max_size + 1):
            for combo in itertools.combinations(remaining, size):
                img = frozenset(combo)
                phi[a] = img
                if consistent(a) and rec(i + 1, [r for r in remaining if r not in img]):
                    return True
                del phi[a]
        return False

    if rec(0, list(dst.atoms)):
        return dict(phi)
    return None
