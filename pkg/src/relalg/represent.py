"""Basic matrices, trio-driven 1-point extensions, and representations.

Covers: enumeration of basic matrices (B0-B2), the flexible-trio filler
and one-point matrix extension, incremental construction of edge-labeled
complete graphs (partial square representations), verification of a
labeling against an algebra, labelings induced by cyclic groups, and
backtracking search for monochrome-triangle-free edge colorings.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import FiniteAlgebra, StructureError
from .families import find_flexible


@dataclass(frozen=True)
class BasicMatrix:
    k: int
    entries: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 1 or len(self.entries) != self.k:
            raise StructureError("entry array does not match size")
        for row in self.entries:
            if len(row) != self.k:
                raise StructureError("entry array is not square")

    def __getitem__(self, ij: tuple[int, int]) -> str:
        i, j = ij
        return self.entries[i][j]

    def is_basic(self, alg: FiniteAlgebra) -> bool:
        """B0: diagonal below 1'; B1: converse-transpose; B2: triangles."""
        s = alg.structure
        for i in range(self.k):
            if self[i, i] not in s.identity:
                return False
            for j in range(self.k):
                if s.converse[self[i, j]] != self[j, i]:
                    return False
                for l in range(self.k):
                    if self[i, j] not in alg.table[(self[i, l], self[l, j])]:
                        return False
        return True

    def satisfies_identity_condition(self, alg: FiniteAlgebra) -> bool:
        s = alg.structure
        return all(
            (self[l, m] in s.identity) == (l == m)
            for l in range(self.k)
            for m in range(self.k)
        )

    def substitute(self, i: int, j: int) -> "BasicMatrix":
        """The matrix m[i/j]: read entries through the map sending i to j."""
        sub = lambda m: j if m == i else m
        return BasicMatrix(
            self.k,
            tuple(
                tuple(self[sub(l), sub(m)] for m in range(self.k))
                for l in range(self.k)
            ),
        )


def enumerate_basic_matrices(
    alg: FiniteAlgebra, k: int, identity_condition: bool = False
) -> list[BasicMatrix]:
    """All k-by-k basic matrices, by backtracking over the upper triangle.

    The triangle constraint is checked as soon as all three entries of a
    triple are placed, which prunes most of the atom^C(k,2) space.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    s = alg.structure
    idents = [a for a in alg.atoms if a in s.identity]
    offdiag = list(alg.diversity_atoms) if identity_condition else list(alg.atoms)
    cells = [(i, j) for i in range(k) for j in range(i + 1, k)]
    grid: list[list[str | None]] = [[None] * k for _ in range(k)]
    out: list[BasicMatrix] = []

    def ok(i: int, j: int) -> bool:
        # check every triangle whose entries are all placed and involve (i, j)
        for l in range(k):
            tri = [(i, j, l), (i, l, j), (l, i, j)]
            for (p, q, r) in tri:
                e_pq, e_pr, e_rq = grid[p][q], grid[p][r], grid[r][q]
                if e_pq is None or e_pr is None or e_rq is None:
                    continue
                if e_pq not in alg.table[(e_pr, e_rq)]:
                    return False
        return True

    def place_diag(d: int) -> None:
        if d == k:
            fill(0)
            return
        for a in idents:
            grid[d][d] = a
            place_diag(d + 1)
        grid[d][d] = None

    def fill(c: int) -> None:
        if c == len(cells):
            out.append(BasicMatrix(k, tuple(tuple(row) for row in grid)))  # type: ignore[arg-type]
            return
        i, j = cells[c]
        for a in offdiag:
            grid[i][j] = a
            grid[j][i] = s.converse[a]
            if ok(i, j):
                fill(c + 1)
        grid[i][j] = grid[j][i] = None

    place_diag(0)
    return out


@dataclass
class TrioFiller:
    """The filler function f(x, y) used to label edges to a fresh point.

    Z_x collects the trio members z with x;z >= 0'; every Z_x has at
    least two of the three, so Z_x and Z_y always intersect, and f picks
    the first of (a, b, c) lying in the intersection.
    """

    algebra: FiniteAlgebra
    trio: tuple[str, str, str]
    zsets: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        alg = self.algebra
        div = alg.diversity
        top = frozenset(alg.atoms)
        for t in self.trio:
            if alg.table[(t, t)] != top:
                raise StructureError(
                    f"{t};{t} is not the top element; "
                    "the given triple is not a flexible trio"
                )
        for x in alg.diversity_atoms:
            z = frozenset(t for t in self.trio if div <= alg.table[(x, t)])
            if len(z) < 2:
                raise StructureError(
                    f"Z_{x} = {sorted(z)} has fewer than two trio members; "
                    "the given triple is not a flexible trio"
                )
            self.zsets[x] = z

    def f(self, x: str, y: str) -> str:
        both = self.zsets[x] & self.zsets[y]
        for t in self.trio:
            if t in both:
                return t
        raise AssertionError("Z-sets of size >= 2 inside a 3-set must intersect")


def trio_extend(
    m: BasicMatrix, i: int, j: int, x: str, y: str, filler: TrioFiller
) -> BasicMatrix:
    """One-point extension: new point k with m'(i,k) = x, m'(k,j) = y, and
    filler.f(x, y) on every other new edge."""
    alg = filler.algebra
    if not m.satisfies_identity_condition(alg):
        raise StructureError("matrix must satisfy the identity condition")
    if i == j or not (0 <= i < m.k and 0 <= j < m.k):
        raise StructureError("need two distinct existing points")
    div = alg.diversity_atoms
    if x not in div or y not in div:
        raise StructureError("x and y must be diversity atoms")
    if m[i, j] not in alg.table[(x, y)]:
        raise StructureError(f"{m[i, j]} is not below {x};{y}")
    k = m.k
    fill = filler.f(x, y)
    ident = next(iter(alg.identity_element))
    new_col = [fill] * k + [ident]
    new_col[i] = x
    new_col[j] = alg.structure.converse[y]
    rows = [tuple(m.entries[l]) + (new_col[l],) for l in range(k)]
    rows.append(tuple(alg.structure.converse[new_col[l]] for l in range(k)) + (ident,))
    return BasicMatrix(k + 1, tuple(rows))


@dataclass
class EdgeLabeling:
    n: int
    label: dict[tuple[int, int], str]

    def validate(self, alg: FiniteAlgebra) -> None:
        s = alg.structure
        for i in range(self.n):
            if self.label.get((i, i)) not in s.identity:
                raise StructureError(f"diagonal entry at {i} is not an identity atom")
            for j in range(self.n):
                a = self.label.get((i, j))
                if a is None or a not in s.converse:
                    raise StructureError(f"missing or unknown label at ({i}, {j})")
                if s.converse[a] != self.label[(j, i)]:
                    raise StructureError(f"labels at ({i}, {j})/({j}, {i}) not converses")


@dataclass
class RepReport:
    sound: bool
    saturated: bool
    surjective: bool
    counterexamples: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def is_complete_square(self) -> bool:
        return self.sound and self.saturated and self.surjective

    def to_dict(self) -> dict:
        return {
            "sound": self.sound,
            "saturated": self.saturated,
            "surjective": self.surjective,
            "is_complete_square": self.is_complete_square,
            "counterexamples": [[kind, list(w)] for kind, w in self.counterexamples],
        }


def verify_representation(alg: FiniteAlgebra, lab: EdgeLabeling) -> RepReport:
    """Decide whether an edge labeling is a complete square representation.

    (a) soundness: label(i,j) <= label(i,l);label(l,j) for all triples;
    (b) witness saturation: label(i,j) <= x;y implies some point carries
        (x, y) between i and j;
    (c) surjectivity: every atom labels at least one edge.
    Together these make a -> {(i,j): label(i,j) = a} a representation
    preserving all joins; for an integral algebra surjectivity onto the
    atoms is the faithfulness requirement on a single square unit.
    """
    lab.validate(alg)
    counterexamples: list[tuple[str, tuple]] = []
    n = lab.n
    sound = True
    for i, j, l in itertools.product(range(n), repeat=3):
        if lab.label[(i, j)] not in alg.table[(lab.label[(i, l)], lab.label[(l, j)])]:
            counterexamples.append(("soundness", (i, j, l)))
            sound = False
            break
    saturated = True
    for i, j in itertools.permutations(range(n), 2):
        u = lab.label[(i, j)]
        for x in alg.atoms:
            for y in alg.atoms:
                if u not in alg.table[(x, y)]:
                    continue
                if not any(
                    lab.label[(i, l)] == x and lab.label[(l, j)] == y for l in range(n)
                ):
                    counterexamples.append(("saturation", (i, j, x, y)))
                    saturated = False
        if not saturated:
            break
    used = {lab.label[(i, j)] for i in range(n) for j in range(n)}
    surjective = used == set(alg.atoms)
    if not surjective:
        counterexamples.append(
            ("surjectivity", tuple(sorted(set(alg.atoms) - used)))
        )
    return RepReport(sound, saturated, surjective, counterexamples)


@dataclass
class BuildResult:
    labeling: EdgeLabeling
    defects: list[tuple[int, int, str, str]]
    point_round: list[int]  # round in which each point was added (seed = 0)
    rounds_run: int


def build_representation(
    alg: FiniteAlgebra,
    trio: tuple[str, str, str],
    points: int = 40,
    rounds: int = 1,
) -> BuildResult:
    """Grow a sound labeling by trio-driven 1-point extensions.

    Seeding gives every atom an edge; then each round walks all edges
    among the points present at the round's start and adds a fresh point
    for every (x, y) witness still missing, up to the point budget.  Any
    fair schedule works; this one processes obligations in index order
    and re-checks each obligation just before spending a point on it.
    Defects are the obligations left unwitnessed among points that
    existed before the final round.
    """
    _, trios = find_flexible(alg)
    if tuple(sorted(trio)) not in {tuple(sorted(t)) for t in trios}:
        raise StructureError(f"no flexible trio {trio} in this algebra")
    filler = TrioFiller(alg, trio)
    ident = next(iter(alg.identity_element))
    div = alg.diversity_atoms
    conv = alg.structure.converse

    label: dict[tuple[int, int], str] = {}

    def set_edge(i: int, j: int, a: str) -> None:
        label[(i, j)] = a
        label[(j, i)] = conv[a]

    def add_point(i: int, j: int, x: str, y: str) -> int:
        """Fresh point k with label(i,k) = x, label(k,j) = y, filler elsewhere."""
        k = len(point_round)
        fill = filler.f(x, y)
        label[(k, k)] = ident
        for l in range(k):
            set_edge(l, k, fill)
        set_edge(i, k, x)
        set_edge(k, j, y)
        point_round.append(current_round)
        return k

    def witnessed(i: int, j: int, x: str, y: str) -> bool:
        npts = len(point_round)
        return any(
            label[(i, l)] == x and label[(l, j)] == y for l in range(npts)
        )

    # seed: two points on the first diversity atom, then one extra point
    # per remaining diversity atom, so every atom labels some edge
    current_round = 0
    point_round = [0, 0]
    label[(0, 0)] = ident
    label[(1, 1)] = ident
    set_edge(0, 1, div[0])
    for a in div[1:]:
        w = next(t for t in trio if div[0] in alg.table[(a, t)])
        add_point(0, 1, a, w)

    for current_round in range(1, rounds + 1):
        frontier = len(point_round)
        for i, j in itertools.combinations(range(frontier), 2):
            for x in div:
                for y in div:
                    if label[(i, j)] not in alg.table[(x, y)]:
                        continue
                    if witnessed(i, j, x, y):
                        continue
                    if len(point_round) >= points:
                        break
                    add_point(i, j, x, y)

    defects: list[tuple[int, int, str, str]] = []
    before_final = [p for p in range(len(point_round)) if point_round[p] < rounds]
    for i, j in itertools.combinations(before_final, 2):
        for x in div:
            for y in div:
                if label[(i, j)] in alg.table[(x, y)] and not witnessed(i, j, x, y):
                    defects.append((i, j, x, y))
    return BuildResult(EdgeLabeling(len(point_round), label), defects, point_round,
                       rounds)


def cyclic_group_labeling(
    modulus: int,
    classes: dict[str, frozenset[int]],
    identity_name: str = "1'",
) -> tuple[EdgeLabeling, FiniteAlgebra]:
    """The labeling of K_modulus with label(i, j) = class of (j - i), and
    the atom structure it realizes (cycles read off the class sums).

    Classes must partition the nonzero residues and be closed under
    negation, or the labeling would break converse symmetry.
    """
    from .core import AtomStructure, Triple, build_algebra

    nonzero = set(range(1, modulus))
    seen: set[int] = set()
    for name, rs in classes.items():
        if not rs or not rs <= nonzero:
            raise StructureError(f"class {name!r} must be nonempty nonzero residues")
        if rs & seen:
            raise StructureError(f"class {name!r} overlaps another class")
        if {(-r) % modulus for r in rs} != rs:
            raise StructureError(f"class {name!r} is not closed under negation")
        seen |= rs
    if seen != nonzero:
        raise StructureError("classes do not cover the nonzero residues")

    of = {r: name for name, rs in classes.items() for r in rs}
    label: dict[tuple[int, int], str] = {}
    for i in range(modulus):
        for j in range(modulus):
            label[(i, j)] = identity_name if i == j else of[(j - i) % modulus]

    atom_order = (identity_name, *sorted(classes))
    reps: set[Triple] = {(identity_name, identity_name, identity_name)}
    reps |= {(identity_name, a, a) for a in sorted(classes)}
    for n1, n2 in itertools.product(sorted(classes), repeat=2):
        sums = {(r1 + r2) % modulus for r1 in classes[n1] for r2 in classes[n2]}
        for n3 in sorted(classes):
            if classes[n3] & sums:
                reps.add((n1, n2, n3))
    alg = build_algebra(AtomStructure.build(atom_order, {identity_name}, reps))
    return EdgeLabeling(modulus, label), alg


def mono_free_search(
    colors: int,
    n: int,
    forbidden: set[tuple[int, int, int]] | None = None,
    seed: int = 0,
) -> dict[tuple[int, int], int] | None:
    """Search for a coloring of K_n's edges avoiding the forbidden
    triangles (default: all monochrome ones).

    A seeded min-conflicts pass runs first, because it finds colorings of
    K_13 in milliseconds where plain backtracking thrashes near the
    Ramsey threshold.  If it finds nothing, the exhaustive lexicographic
    backtracking below settles the question, so returning None is still
    an exhaustive proof that no such coloring exists.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if forbidden is None:
        forbidden = {(c, c, c) for c in range(colors)}
    found = _min_conflicts(colors, n, forbidden, seed)
    if found is not None:
        return found
    return _exhaustive_coloring(colors, n, forbidden)


def _min_conflicts(
    colors: int,
    n: int,
    forbidden: set[tuple[int, int, int]],
    seed: int,
    restarts: int = 8,
    steps: int | None = None,
) -> dict[tuple[int, int], int] | None:
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    if steps is None:
        steps = min(200 * len(pairs), 30_000)

    def conflicts(col: dict, i: int, j: int, c: int) -> int:
        return sum(
            1
            for l in range(n)
            if l not in (i, j)
            and (col[_key(i, l)], col[_key(l, j)], c) in forbidden
        )

    for _ in range(restarts):
        col = {p: rng.randrange(colors) for p in pairs}
        for step in range(steps):
            if step % 200 == 0 and all(conflicts(col, *p, col[p]) == 0 for p in pairs):
                out: dict[tuple[int, int], int] = {}
                for (i, j), c in col.items():
                    out[(i, j)] = out[(j, i)] = c
                return out
            i, j = rng.choice(pairs)
            if conflicts(col, i, j, col[(i, j)]) == 0:
                continue
            scores = [(conflicts(col, i, j, c), rng.random(), c) for c in range(colors)]
            col[(i, j)] = min(scores)[2]
        if all(conflicts(col, *p, col[p]) == 0 for p in pairs):
            out = {}
            for (i, j), c in col.items():
                out[(i, j)] = out[(j, i)] = c
            return out
    return None


def _key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _exhaustive_coloring(
    colors: int,
    n: int,
    forbidden: set[tuple[int, int, int]],
) -> dict[tuple[int, int], int] | None:
    """Vertex-by-vertex backtracking; a new vertex may only introduce
    color c when 0..c-1 already appear (lexicographic symmetry breaking)."""
    edge: dict[tuple[int, int], int] = {}

    def put(i: int, j: int, c: int) -> None:
        edge[(i, j)] = edge[(j, i)] = c

    def drop(i: int, j: int) -> None:
        del edge[(i, j)], edge[(j, i)]

    def ok(v: int, j: int) -> bool:
        c = edge[(j, v)]
        for l in range(v):
            if l == j or (l, v) not in edge:
                continue
            if (edge[(j, l)], edge[(l, v)], c) in forbidden:
                return False
        return True

    def rec(v: int, j: int, used: int) -> bool:
        if v == n:
            return True
        if j == v:
            return rec(v + 1, 0, used)
        limit = min(colors, used + 1)
        for c in range(limit):
            put(j, v, c)
            if ok(v, j) and rec(v, j + 1, max(used, c + 1)):
                return True
            drop(j, v)
        return False

    if rec(1, 0, 0):
        return {k: v for k, v in edge.items()}
    return None
