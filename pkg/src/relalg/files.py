"""Text file formats: algebras, edge labelings, residue partitions.

The algebra format is line-oriented key/value with the cycles last,
given as canonical representative triples (one per orbit of the six
transforms, lexicographically least by atom index).  Serialization is
canonical, so serialize(parse(text)) == text for files produced here.

    name <name>
    atoms <a> <b> ...
    identity <a> ...
    symmetric true|false
    converse <x> <y>          # one pair per line, only when not symmetric
    multiplicity <a>=<m> ...  # optional
    block <a> <b> ...         # optional, one line per block
    meta <key>=<value>        # optional
    cycles
    <x> <y> <z>
    ...
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import AtomStructure, Element, FiniteAlgebra, StructureError, Triple, build_algebra


class FormatError(ValueError):
    """Malformed input file."""


@dataclass
class AlgebraFile:
    algebra: FiniteAlgebra
    name: str = "algebra"
    multiplicity: dict[str, int] = field(default_factory=dict)
    blocks: tuple[Element, ...] = ()
    meta: dict[str, str] = field(default_factory=dict)


def serialize_algebra(
    alg: FiniteAlgebra,
    name: str = "algebra",
    multiplicity: dict[str, int] | None = None,
    blocks: tuple[Element, ...] | list[Element] | None = None,
    meta: dict[str, str] | None = None,
) -> str:
    s = alg.structure
    lines = [
        f"name {name}",
        "atoms " + " ".join(s.atoms),
        "identity " + " ".join(alg.sorted_atoms(s.identity)),
        f"symmetric {'true' if s.is_symmetric else 'false'}",
    ]
    if not s.is_symmetric:
        for a in s.atoms:
            if alg.atom_key(a) <= alg.atom_key(s.converse[a]):
                lines.append(f"converse {a} {s.converse[a]}")
    if multiplicity:
        pairs = sorted(multiplicity.items(), key=lambda kv: alg.atom_key(kv[0]))
        lines.append("multiplicity " + " ".join(f"{a}={m}" for a, m in pairs))
    if blocks:
        for b in sorted(blocks, key=lambda b: alg.atom_key(alg.sorted_atoms(b)[0])):
            lines.append("block " + " ".join(alg.sorted_atoms(b)))
    if meta:
        for k in sorted(meta):
            lines.append(f"meta {k}={meta[k]}")
    lines.append("cycles")
    for t in s.canonical_cycle_reps():
        lines.append(" ".join(t))
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> AlgebraFile:
    name = "algebra"
    atoms: tuple[str, ...] | None = None
    identity: frozenset[str] | None = None
    symmetric: bool | None = None
    converse: dict[str, str] = {}
    multiplicity: dict[str, int] = {}
    blocks: list[Element] = []
    meta: dict[str, str] = {}
    reps: list[Triple] = []
    in_cycles = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_cycles:
            parts = line.split()
            if len(parts) != 3:
                raise FormatError(f"bad cycle line: {raw!r}")
            reps.append((parts[0], parts[1], parts[2]))
            continue
        key, _, rest = line.partition(" ")
        if key == "name":
            name = rest.strip()
        elif key == "atoms":
            atoms = tuple(rest.split())
        elif key == "identity":
            identity = frozenset(rest.split())
        elif key == "symmetric":
            if rest.strip() not in ("true", "false"):
                raise FormatError(f"symmetric must be true/false, got {rest!r}")
            symmetric = rest.strip() == "true"
        elif key == "converse":
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(f"bad converse line: {raw!r}")
            converse[parts[0]] = parts[1]
            converse[parts[1]] = parts[0]
        elif key == "multiplicity":
            for item in rest.split():
                a, _, m = item.partition("=")
                multiplicity[a] = int(m)
        elif key == "block":
            blocks.append(frozenset(rest.split()))
        elif key == "meta":
            k, _, v = rest.partition("=")
            meta[k] = v
        elif key == "cycles":
            in_cycles = True
        else:
            raise FormatError(f"unknown key {key!r}")
    if atoms is None or identity is None or symmetric is None:
        raise FormatError("file must declare atoms, identity, and symmetric")
    if symmetric:
        conv = {a: a for a in atoms}
    else:
        conv = dict(converse)
        for a in atoms:
            conv.setdefault(a, a)
    try:
        alg = build_algebra(AtomStructure.build(atoms, identity, reps, conv))
    except StructureError as e:
        raise FormatError(str(e)) from e
    return AlgebraFile(alg, name, multiplicity, tuple(blocks), meta)


def load_algebra(path: str) -> AlgebraFile:
    with open(path) as fh:
        return parse_algebra(fh.read())


def save_algebra(path: str, alg: FiniteAlgebra, **kwargs) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_algebra(alg, **kwargs))


# -- edge labelings ------------------------------------------------------

def serialize_labeling(n: int, label: dict[tuple[int, int], str]) -> str:
    lines = [str(n)]
    for i in range(n):
        lines.append(" ".join(label[(i, j)] for j in range(n)))
    return "\n".join(lines) + "\n"


def parse_labeling(text: str) -> tuple[int, dict[tuple[int, int], str]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty labeling file")
    try:
        n = int(lines[0])
    except ValueError as e:
        raise FormatError(f"bad point count {lines[0]!r}") from e
    if len(lines) != n + 1:
        raise FormatError(f"expected {n} rows, got {len(lines) - 1}")
    label: dict[tuple[int, int], str] = {}
    for i, row in enumerate(lines[1:]):
        names = row.split()
        if len(names) != n:
            raise FormatError(f"row {i} has {len(names)} entries, expected {n}")
        for j, a in enumerate(names):
            label[(i, j)] = a
    return n, label


# -- residue partitions for cyclic labelings ------------------------------

def parse_partition(text: str) -> dict[str, frozenset[int]]:
    """Lines of the form "classname: r1 r2 ..." (residues as integers)."""
    out: dict[str, frozenset[int]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition(":")
        if not sep:
            raise FormatError(f"bad partition line: {raw!r}")
        try:
            out[name.strip()] = frozenset(int(r) for r in rest.split())
        except ValueError as e:
            raise FormatError(f"bad residue in line {raw!r}") from e
    if not out:
        raise FormatError("empty partition file")
    return out


def serialize_partition(classes: dict[str, frozenset[int]]) -> str:
    return "\n".join(
        f"{name}: " + " ".join(str(r) for r in sorted(rs))
        for name, rs in sorted(classes.items())
    ) + "\n"
