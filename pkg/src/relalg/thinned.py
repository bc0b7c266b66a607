"""Exact finite computation inside the thinned-splitting completion.

Given a finite symmetric integral algebra A and a partition subalgebra
E, the thinned algebra has atoms 1' and x@(i) for every diversity atom
x of A and i in omega.  A diversity triple (x@(i), y@(j), z@(k)) is a
cycle iff z <= x;y and, when x, y, z share an E-block, the thinning
predicate T(i, j, k) holds.

The atom-generated elements of this algebra admit an exact finite
encoding: an optional identity part, finitely many sporadic atoms, and
per-atom tails J(x, n) = sum of x@(i) for i >= n.  Products of such
elements close up, which is what makes the B(n) / D(n) fragments finite.

Case bookkeeping for atom products (the three printed clauses reduce to
a key on cover equality, atom equality and index equality):
  * covers differ                  -> J(x;y, 0)
  * same cover, i != j             -> out-of-cover tails + sporadics at max(i, j)
  * same cover, i == j             -> out-of-cover tails + sporadics at k <= i,
                                      plus 1' exactly when x == y
The identity summand appears only in the i == j, x == y case, exactly
as the product rules state; the asymmetry is not smoothed over.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field

from .core import (
    AtomStructure,
    AxiomReport,
    Element,
    FiniteAlgebra,
    StructureError,
    Triple,
    build_algebra,
    check_axioms,
)
from .families import PartitionSubalg, check_special_extension
from . import files as _files


class FragmentClosureError(RuntimeError):
    """A fragment's atom list failed to absorb one of its products.

    The chosen atom lists are expected to be product-closed, so a
    failure here indicates a bug; the offending pair is reported.
    """


def thinning_T(i: int, j: int, k: int) -> bool:
    return (i <= j == k) or (j <= k == i) or (k <= i == j)


@dataclass
class ThinnedSpec:
    """The pair (A, E) defining the thinned splitting, with the cover map."""

    algebra: FiniteAlgebra
    partition: PartitionSubalg

    def __post_init__(self) -> None:
        if self.partition.parent.atoms != self.algebra.atoms:
            raise StructureError("partition must be over the algebra's atoms")
        rep = check_axioms(self.algebra)
        if not (rep.is_symmetric and rep.is_integral):
            raise StructureError("thinned splitting needs a symmetric integral algebra")
        self.identity_atom = next(iter(self.algebra.identity_element))
        self.cover: dict[str, Element] = {
            a: self.partition.block_of(a) for a in self.algebra.diversity_atoms
        }

    @property
    def diversity_atoms(self) -> tuple[str, ...]:
        return self.algebra.diversity_atoms

    def atom_key(self, a: str) -> int:
        return self.algebra.atom_key(a)

    def spec_hash(self) -> str:
        text = _files.serialize_algebra(
            self.algebra, name="thinned-spec", blocks=self.partition.blocks
        )
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    # -- elements ------------------------------------------------------
    def zero(self) -> "TailedElement":
        return TailedElement.make(self, False, {}, set())

    def identity(self) -> "TailedElement":
        return TailedElement.make(self, True, {}, set())

    def atom(self, x: str, i: int) -> "TailedElement":
        if x not in self.cover:
            raise StructureError(f"{x!r} is not a diversity atom")
        return TailedElement.make(self, False, {}, {(x, i)})

    def tail(self, x: str, n: int) -> "TailedElement":
        if x not in self.cover:
            raise StructureError(f"{x!r} is not a diversity atom")
        return TailedElement.make(self, False, {x: n}, set())

    def j(self, a: Element, n: int) -> "TailedElement":
        """J(a, n): tails at n for the diversity atoms of a, plus 1' if
        the element a contains the identity atom."""
        return TailedElement.make(
            self,
            self.identity_atom in a,
            {x: n for x in a if x != self.identity_atom},
            set(),
        )

    def top(self) -> "TailedElement":
        return self.j(self.algebra.top, 0)


@dataclass(frozen=True)
class TailedElement:
    """Canonical encoding of an atom-generated element.

    Canonical form: every sporadic index lies strictly below that atom's
    tail threshold (if any), so equality of denotations is equality of
    fields.
    """

    spec: ThinnedSpec = field(compare=False, repr=False)
    has_identity: bool = False
    tails: tuple[tuple[str, int], ...] = ()
    sporadic: frozenset[tuple[str, int]] = frozenset()

    @classmethod
    def make(
        cls,
        spec: ThinnedSpec,
        has_identity: bool,
        tails: dict[str, int],
        sporadic: set[tuple[str, int]],
    ) -> "TailedElement":
        tails = dict(tails)
        sporadic = set(sporadic)
        for x, t in list(tails.items()):
            while (x, t - 1) in sporadic:
                sporadic.discard((x, t - 1))
                t -= 1
            tails[x] = t
        sporadic = {(x, i) for (x, i) in sporadic if x not in tails or i < tails[x]}
        ordered = tuple(sorted(tails.items(), key=lambda kv: spec.atom_key(kv[0])))
        return cls(spec, has_identity, ordered, frozenset(sporadic))

    # -- set algebra on denotations -------------------------------------
    @property
    def tail_map(self) -> dict[str, int]:
        return dict(self.tails)

    @property
    def is_zero(self) -> bool:
        return not (self.has_identity or self.tails or self.sporadic)

    def __or__(self, other: "TailedElement") -> "TailedElement":
        assert self.spec is other.spec
        tails = self.tail_map
        for x, n in other.tails:
            tails[x] = min(tails.get(x, n), n)
        return TailedElement.make(
            self.spec,
            self.has_identity or other.has_identity,
            tails,
            set(self.sporadic | other.sporadic),
        )

    def __and__(self, other: "TailedElement") -> "TailedElement":
        assert self.spec is other.spec
        mine, theirs = self.tail_map, other.tail_map
        tails = {x: max(mine[x], theirs[x]) for x in mine if x in theirs}
        sporadic: set[tuple[str, int]] = set()
        sporadic |= {(x, i) for (x, i) in self.sporadic
                     if (x, i) in other.sporadic or (x in theirs and i >= theirs[x])}
        sporadic |= {(x, i) for (x, i) in other.sporadic
                     if x in mine and i >= mine[x]}
        return TailedElement.make(
            self.spec, self.has_identity and other.has_identity, tails, sporadic
        )

    def issubset(self, other: "TailedElement") -> bool:
        return (self & other) == self

    def isdisjoint(self, other: "TailedElement") -> bool:
        return (self & other).is_zero

    def truncate(self, window: int) -> tuple[bool, frozenset[tuple[str, int]]]:
        """The denotation restricted to indices < window, listed explicitly."""
        atoms = {(x, i) for (x, i) in self.sporadic if i < window}
        for x, n in self.tails:
            atoms |= {(x, i) for i in range(n, window)}
        return self.has_identity, frozenset(atoms)


def is_cycle(
    spec: ThinnedSpec,
    u: tuple[str, int],
    v: tuple[str, int],
    w: tuple[str, int],
) -> bool:
    """The raw diversity-cycle rule: z <= x;y, thinned by T when all
    three atoms share an E-block.  Used as the independent oracle for
    the clause-based product below."""
    (x, i), (y, j), (z, k) = u, v, w
    if z not in spec.algebra.table[(x, y)]:
        return False
    if spec.cover[x] == spec.cover[y] == spec.cover[z]:
        return thinning_T(i, j, k)
    return True


def atom_product(spec: ThinnedSpec, x: str, i: int, y: str, j: int) -> TailedElement:
    """Product of two diversity atoms x@(i) ; y@(j), by the clause rules."""
    for a in (x, y):
        if a not in spec.cover:
            raise StructureError(f"{a!r} is not a diversity atom")
    alg = spec.algebra
    prod = alg.table[(x, y)]
    a = spec.cover[x]
    if a != spec.cover[y]:
        return spec.j(prod, 0)
    out_of_cover = (prod - a) - alg.identity_element
    in_cover = prod & a
    result = spec.j(out_of_cover, 0)
    if i == j:
        sporadic = {(z, k) for z in in_cover for k in range(i + 1)}
        ident = x == y
    else:
        sporadic = {(z, max(i, j)) for z in in_cover}
        ident = False
    return result | TailedElement.make(spec, ident, {}, sporadic)


def _sporadic_times_tail(
    spec: ThinnedSpec, x: str, i: int, y: str, n: int
) -> TailedElement:
    """Closed form for x@(i) ; J(y, n), derived by index analysis from the
    clause rules (validated against the brute-force oracle in the tests)."""
    alg = spec.algebra
    prod = alg.table[(x, y)]
    a = spec.cover[x]
    if a != spec.cover[y]:
        return spec.j(prod, 0)
    out_of_cover = (prod - a) - alg.identity_element
    in_cover = prod & a
    level = 0 if i >= n else n
    ident = x == y and i >= n
    return spec.j(out_of_cover, 0) | TailedElement.make(
        spec, ident, {z: level for z in in_cover}, set()
    )


def tailed_product(spec: ThinnedSpec, u: TailedElement, v: TailedElement) -> TailedElement:
    """Product of two tailed elements, via closed forms per component pair.

    Tail x tail collapses to J(x;y, 0) regardless of covers; the identity
    part of J already accounts for x == y.  Identity components act as
    units; sporadic x sporadic is the atom product.
    """
    if u.spec is not v.spec:
        raise StructureError("tailed elements over different specs")
    result = spec.zero()
    if u.has_identity:
        result = result | TailedElement.make(spec, v.has_identity, v.tail_map,
                                             set(v.sporadic))
    if v.has_identity:
        result = result | TailedElement.make(spec, u.has_identity, u.tail_map,
                                             set(u.sporadic))
    for (x, i) in u.sporadic:
        for (y, j) in v.sporadic:
            result = result | atom_product(spec, x, i, y, j)
        for (y, n) in v.tails:
            result = result | _sporadic_times_tail(spec, x, i, y, n)
    for (x, m) in u.tails:
        for (y, j) in v.sporadic:
            result = result | _sporadic_times_tail(spec, y, j, x, m)
        for (y, n) in v.tails:
            result = result | spec.j(spec.algebra.table[(x, y)], 0)
    return result


def almost_same(u: TailedElement, v: TailedElement) -> bool:
    """True iff the symmetric difference of the denotations is finite,
    i.e. the two elements have tails on exactly the same atoms."""
    if u.spec is not v.spec:
        raise StructureError("tailed elements over different specs")
    return {x for x, _ in u.tails} == {x for x, _ in v.tails}


@dataclass
class FiniteFragment:
    spec: ThinnedSpec
    n: int
    kind: str  # "bn" | "dn"
    algebra: FiniteAlgebra
    elements: dict[str, TailedElement]
    report: AxiomReport


def _fragment_atoms(
    spec: ThinnedSpec, n: int, kind: str
) -> list[tuple[str, TailedElement]]:
    ident = spec.identity_atom
    out: list[tuple[str, TailedElement]] = [(ident, spec.identity())]
    for x in spec.diversity_atoms:
        for i in range(n):
            out.append((f"{x}@{i}", spec.atom(x, i)))
    if kind == "bn":
        for b in spec.partition.blocks:
            name = f"J({spec.partition.block_name(b)})@{n}"
            out.append((name, spec.j(b, n)))
    else:
        for x in spec.diversity_atoms:
            out.append((f"J({x})@{n}", spec.tail(x, n)))
    return out


def build_fragment(spec: ThinnedSpec, n: int, kind: str) -> FiniteFragment:
    """The finite subalgebra on {1'} + {x@(i): i < n} + the level-n tails.

    kind "bn" uses one tail per E-block and requires the special-extension
    property; kind "dn" uses one tail per diversity atom of A and needs no
    such hypothesis.  Every pairwise product is verified to be an exact
    union of the listed atoms.
    """
    if kind not in ("bn", "dn"):
        raise ValueError(f"kind must be 'bn' or 'dn', got {kind!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if kind == "bn":
        ok, witness = check_special_extension(spec.algebra, spec.partition)
        if not ok:
            raise StructureError(
                f"B(n) fragments need the special-extension property; violated at {witness}"
            )
    named = _fragment_atoms(spec, n, kind)
    names = [nm for nm, _ in named]
    elements = dict(named)

    cycles: set[Triple] = set()
    for (n1, e1), (n2, e2) in itertools.combinations_with_replacement(named, 2):
        prod = tailed_product(spec, e1, e2)
        parts: list[str] = []
        for n3, e3 in named:
            if e3.issubset(prod):
                parts.append(n3)
            elif not e3.isdisjoint(prod):
                raise FragmentClosureError(
                    f"product {n1};{n2} cuts fragment atom {n3} "
                    f"(spec {spec.spec_hash()}, n={n}, kind={kind})"
                )
        for n3 in parts:
            cycles.add((n1, n2, n3))
            cycles.add((n2, n1, n3))

    alg = build_algebra(
        AtomStructure(
            tuple(names),
            frozenset({spec.identity_atom}),
            {nm: nm for nm in names},
            frozenset(cycles),
        )
    )
    return FiniteFragment(spec, n, kind, alg, elements, check_axioms(alg))


EmbeddingWitness = tuple[str, tuple[str, ...]]


def verify_base_embedding(
    spec: ThinnedSpec, n: int
) -> tuple[bool, dict[str, Element], EmbeddingWitness | None]:
    """Check that a -> J(a, 0) embeds A into the D(n) fragment.

    Each diversity atom a of A maps to {a@(i): i < n} + J(a, n); the
    identity maps to itself.  Disjointness, identity, converse, and all
    atom-product preservation checks run exhaustively.
    """
    frag = build_fragment(spec, n, "dn")
    falg = frag.algebra
    phi: dict[str, Element] = {
        spec.identity_atom: frozenset({spec.identity_atom})
    }
    for a in spec.diversity_atoms:
        phi[a] = frozenset({f"{a}@{i}" for i in range(n)} | {f"J({a})@{n}"})

    images = list(phi.values())
    for p, q in itertools.combinations(images, 2):
        if p & q:
            return False, phi, ("disjointness", tuple(sorted(p & q)))
    for a in spec.algebra.atoms:
        if falg.converse_el(phi[a]) != phi[spec.algebra.structure.converse[a]]:
            return False, phi, ("converse", (a,))
    for a in spec.algebra.atoms:
        for b in spec.algebra.atoms:
            lhs = falg.product(phi[a], phi[b])
            rhs: Element = frozenset()
            for z in spec.algebra.table[(a, b)]:
                rhs |= phi[z]
            if lhs != rhs:
                return False, phi, ("product", (a, b))
    return True, phi, None
