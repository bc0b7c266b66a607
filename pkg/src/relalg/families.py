"""Constructors and property checks for the algebra families used here.

Covers the no-1-cycles algebras E23(q), splitting and Monk algebras,
the two-parameter (alpha, beta) subalgebras of E23(q), special
extensions, and flexible atoms / flexible trios.

Note on a documented subtlety: the claim "any three diversity atoms of
E23(q) form a flexible trio" fails literally, because an atom a of
E23(q) satisfies a;a = complement(a), not a;a = 1.  The trio checker
evaluates the trio definition as written; the claim does hold for the
grouped atoms of proper subalgebras, which is the form used everywhere
in this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    AtomStructure,
    Element,
    FiniteAlgebra,
    StructureError,
    Triple,
    build_algebra,
    check_axioms,
)


def build_e23(q: int) -> FiniteAlgebra:
    """The q-atom symmetric integral algebra with all 2- and 3-cycles and
    no 1-cycles; atoms e0 = identity, e1 .. e(q-1)."""
    if q < 4:
        raise ValueError(f"build_e23 requires q >= 4, got {q}")
    atoms = tuple(f"e{i}" for i in range(q))
    div = atoms[1:]
    reps: set[Triple] = {("e0", "e0", "e0")}
    reps |= {("e0", a, a) for a in div}
    reps |= {(a, a, b) for a in div for b in div if a != b}
    reps |= {t for t in itertools.combinations(div, 3)}
    return build_algebra(AtomStructure.build(atoms, {"e0"}, reps))


@dataclass
class SplitSpec:
    base: FiniteAlgebra
    multiplicity: dict[str, int]

    def __post_init__(self) -> None:
        rep = check_axioms(self.base)
        if not (rep.is_symmetric and rep.is_integral):
            raise ValueError("splitting requires a symmetric integral base")
        for a in self.base.diversity_atoms:
            self.multiplicity.setdefault(a, 1)
        for a, m in self.multiplicity.items():
            if a not in self.base.diversity_atoms:
                raise ValueError(f"multiplicity given for non-diversity atom {a!r}")
            if m < 1:
                raise ValueError(f"multiplicity of {a!r} must be >= 1")


@dataclass
class SplitResult:
    algebra: FiniteAlgebra
    cover: dict[str, str]  # piece -> base atom


def split_algebra(spec: SplitSpec) -> SplitResult:
    """Split each diversity atom a of the base into multiplicity(a) pieces.

    Piece products are inherited from the covers: x;y = c(x);c(y).0' for
    x != y, and x;x = c(x);c(x); the identity atom is untouched.
    """
    base = spec.base
    ident = next(iter(base.identity_element))
    pieces: list[str] = [ident]
    cover: dict[str, str] = {ident: ident}
    for a in base.diversity_atoms:
        m = spec.multiplicity[a]
        if m == 1:
            pieces.append(a)
            cover[a] = a
        else:
            for i in range(1, m + 1):
                p = f"{a}_{i}"
                pieces.append(p)
                cover[p] = a
    div = [p for p in pieces if p != ident]
    reps: set[Triple] = {(ident, ident, ident)}
    reps |= {(ident, p, p) for p in div}
    for x, y, z in itertools.product(div, repeat=3):
        if cover[z] in base.table[(cover[x], cover[y])]:
            reps.add((x, y, z))
    alg = build_algebra(AtomStructure.build(tuple(pieces), {ident}, reps))
    return SplitResult(alg, cover)


@dataclass
class MonkAlgebra:
    algebra: FiniteAlgebra
    cover: dict[str, str]
    colors: tuple[str, ...]  # diversity atoms of the embedded E23(q) copy


def build_monk(q: int, multiplicity: dict[str, int] | None = None) -> MonkAlgebra:
    """Split E23(q) by the given multiplicities; the q-1 colors are the
    diversity atoms of the embedded E23(q) copy (stored as annotation)."""
    base = build_e23(q)
    res = split_algebra(SplitSpec(base, dict(multiplicity or {})))
    return MonkAlgebra(res.algebra, res.cover, base.diversity_atoms)


@dataclass
class PartitionSubalg:
    """A subalgebra of a finite symmetric integral algebra presented by a
    partition of its diversity atoms whose blocks generate it."""

    parent: FiniteAlgebra
    blocks: tuple[Element, ...]

    def __post_init__(self) -> None:
        self.blocks = tuple(frozenset(b) for b in self.blocks)
        div = set(self.parent.diversity_atoms)
        seen: set[str] = set()
        for b in self.blocks:
            if not b:
                raise StructureError("empty block")
            if not b <= div:
                raise StructureError(f"block {sorted(b)} contains non-diversity atoms")
            if b & seen:
                raise StructureError(f"block {sorted(b)} overlaps another block")
            seen |= b
        if seen != div:
            raise StructureError("blocks do not cover the diversity atoms")
        els = [self.parent.identity_element, *self.blocks]
        for b1 in self.blocks:
            for b2 in self.blocks:
                prod = self.parent.product(b1, b2)
                covered: Element = frozenset()
                for e in els:
                    if e <= prod:
                        covered |= e
                    elif e & prod:
                        raise StructureError(
                            f"blocks do not generate a subalgebra: "
                            f"{sorted(b1)};{sorted(b2)} cuts {sorted(e)}"
                        )
                if covered != prod:
                    raise StructureError("blocks do not generate a subalgebra")

    def block_name(self, b: Element) -> str:
        return "+".join(self.parent.sorted_atoms(b))

    def block_of(self, atom: str) -> Element:
        for b in self.blocks:
            if atom in b:
                return b
        raise StructureError(f"atom {atom!r} not in any block")

    def block_algebra(self) -> tuple[FiniteAlgebra, dict[str, Element]]:
        """The subalgebra on atoms {identity} + blocks, with the inclusion map."""
        par = self.parent
        ident = "+".join(par.sorted_atoms(par.identity_element))
        named = {ident: par.identity_element}
        named.update({self.block_name(b): b for b in self.blocks})
        order = sorted(named, key=lambda n: par.atom_key(par.sorted_atoms(named[n])[0]))
        cycles: set[Triple] = set()
        for n1 in order:
            for n2 in order:
                prod = par.product(named[n1], named[n2])
                for n3 in order:
                    if named[n3] <= prod:
                        cycles.add((n1, n2, n3))
        converse = {
            n: next(m for m in order if named[m] == par.converse_el(named[n]))
            for n in order
        }
        alg = FiniteAlgebra(
            AtomStructure(tuple(order), frozenset({ident}), converse, frozenset(cycles))
        )
        return alg, named


def e23_subalgebra(q: int, alpha: int, beta: int) -> PartitionSubalg:
    """The canonical (alpha, beta) subalgebra of E23(q): alpha singleton
    blocks (a;a = complement of a) then beta grouped blocks of sizes
    2, .., 2, remainder (each with a;a = 1)."""
    if not (alpha + 2 * beta < q and 0 < alpha + beta):
        raise ValueError(
            f"(alpha, beta) = ({alpha}, {beta}) violates alpha+2beta < q and 0 < alpha+beta"
        )
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    parent = build_e23(q)
    div = list(parent.diversity_atoms)
    blocks: list[Element] = [frozenset({a}) for a in div[:alpha]]
    rest = div[alpha:]
    if beta:
        for i in range(beta - 1):
            blocks.append(frozenset(rest[2 * i : 2 * i + 2]))
        blocks.append(frozenset(rest[2 * (beta - 1) :]))
    elif rest:
        raise ValueError("beta = 0 leaves diversity atoms uncovered")
    return PartitionSubalg(parent, tuple(blocks))


def lift_blocks(cover: dict[str, str], sub: PartitionSubalg,
                split: FiniteAlgebra) -> PartitionSubalg:
    """Lift a partition of the base's diversity atoms to the pieces of a
    split algebra: each block becomes the set of pieces it covers."""
    lifted = tuple(
        frozenset(p for p, c in cover.items() if c in b) for b in sub.blocks
    )
    return PartitionSubalg(split, lifted)


SpecialWitness = tuple[str, tuple[str, ...]]


def check_special_extension(
    alg: FiniteAlgebra, part: PartitionSubalg
) -> tuple[bool, SpecialWitness | None]:
    """Decide whether alg specially extends the block subalgebra.

    Condition (i): for diversity blocks a, b, c, not all equal, with
    a;b >= c, every pair of atoms x <= a, y <= b has x;y >= c.
    Condition (ii): if a;a >= a then x;y.a != 0 for all atoms x, y <= a.
    Returns the lexicographically least violation, if any.
    """
    if part.parent is not alg and part.parent.atoms != alg.atoms:
        raise StructureError("partition is not over this algebra's atoms")
    blocks = part.blocks
    for a, b in itertools.product(blocks, repeat=2):
        prod = alg.product(a, b)
        for c in blocks:
            if not (a == b == c) and c <= prod:
                for x in alg.sorted_atoms(a):
                    for y in alg.sorted_atoms(b):
                        if not c <= alg.table[(x, y)]:
                            return False, (
                                "condition-i",
                                (part.block_name(a), part.block_name(b),
                                 part.block_name(c), x, y),
                            )
    for a in blocks:
        if a <= alg.product(a, a):
            for x in alg.sorted_atoms(a):
                for y in alg.sorted_atoms(a):
                    if not alg.table[(x, y)] & a:
                        return False, (
                            "condition-ii",
                            (part.block_name(a), x, y),
                        )
    return True, None


def find_flexible(
    alg: FiniteAlgebra,
) -> tuple[list[str], list[tuple[str, str, str]]]:
    """Flexible atoms and flexible trios of a symmetric integral algebra.

    An atom a is flexible if a;a = 1 and x;a = 0' for every diversity
    atom x != a.  A trio (a, b, c) requires a;a = b;b = c;c = 1, pairwise
    products 0', and every other diversity atom to compose to 0' with at
    least two of the three.
    """
    rep = check_axioms(alg)
    if not (rep.is_symmetric and rep.is_integral):
        raise ValueError("flexibility is defined for symmetric integral algebras")
    div = alg.diversity
    top = alg.top

    def prod(x: str, y: str) -> Element:
        return alg.table[(x, y)]

    flexible = [
        a
        for a in alg.diversity_atoms
        if prod(a, a) == top
        and all(prod(x, a) == div for x in alg.diversity_atoms if x != a)
    ]

    trios: list[tuple[str, str, str]] = []
    for a, b, c in itertools.combinations(alg.diversity_atoms, 3):
        if not (prod(a, a) == top and prod(b, b) == top and prod(c, c) == top):
            continue
        if not (prod(a, b) == div and prod(a, c) == div and prod(b, c) == div):
            continue
        ok = True
        for x in alg.diversity_atoms:
            if x in (a, b, c):
                continue
            zero_with = sum(1 for t in (a, b, c) if prod(x, t) == div)
            if zero_with < 2:
                ok = False
                break
        if ok:
            trios.append((a, b, c))
    return flexible, trios
