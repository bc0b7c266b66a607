"""Command-line front end.

Exit codes: 0 = property holds / construction succeeded; 1 = property
checked and found false (witness in the report); 2 = usage, parse, or
I/O error.  --json switches every command to machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import StructureError, build_algebra, check_axioms
from .families import (
    PartitionSubalg,
    SplitSpec,
    check_special_extension,
    e23_subalgebra,
    build_e23,
    find_flexible,
    split_algebra,
)
from .thinned import FragmentClosureError, ThinnedSpec, build_fragment
from .represent import (
    build_representation,
    cyclic_group_labeling,
    enumerate_basic_matrices,
    mono_free_search,
    verify_representation,
)
from .cylindric import (
    build_ca,
    check_cylindric_basis,
    check_relational_basis,
    pair_product_condition,
)
from . import files

OK, FALSE, USAGE = 0, 1, 2


def _emit(args, report: dict, human: str) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(human)


def _load(path: str) -> files.AlgebraFile:
    try:
        return files.load_algebra(path)
    except OSError as e:
        raise SystemExit(_usage_error(f"cannot read {path}: {e.strerror}"))
    except files.FormatError as e:
        raise SystemExit(_usage_error(f"bad algebra file {path}: {e}"))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE


def _partition_from_file(af: files.AlgebraFile) -> PartitionSubalg:
    if not af.blocks:
        raise SystemExit(_usage_error(f"{af.name}: file has no block lines"))
    try:
        return PartitionSubalg(af.algebra, af.blocks)
    except StructureError as e:
        raise SystemExit(_usage_error(str(e)))


def cmd_gen(args) -> int:
    try:
        if args.family == "e23":
            alg = build_e23(args.q)
            text = files.serialize_algebra(alg, name=f"e23-{args.q}")
        else:
            sub = e23_subalgebra(args.q, args.alpha, args.beta)
            text = files.serialize_algebra(
                sub.parent,
                name=f"e23-{args.q}-sub-{args.alpha}-{args.beta}",
                blocks=sub.blocks,
            )
    except ValueError as e:
        return _usage_error(str(e))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_check(args) -> int:
    af = _load(args.file)
    rep = check_axioms(af.algebra)
    marks = lambda b: "✓" if b else "✗"
    _emit(
        args,
        rep.to_dict(),
        f"RA {marks(rep.is_ra)} symmetric {marks(rep.is_symmetric)} "
        f"integral {marks(rep.is_integral)}",
    )
    return OK if rep.is_ra else FALSE


def cmd_special(args) -> int:
    af = _load(args.file)
    part = _partition_from_file(af)
    ok, witness = check_special_extension(af.algebra, part)
    _emit(
        args,
        {"special_extension": ok, "witness": list(witness) if witness else None},
        "special extension ✓" if ok else f"violated: {witness}",
    )
    return OK if ok else FALSE


def cmd_trio(args) -> int:
    af = _load(args.file)
    try:
        flexible, trios = find_flexible(af.algebra)
    except ValueError as e:
        return _usage_error(str(e))
    _emit(
        args,
        {"flexible_atoms": flexible, "trios": [list(t) for t in trios]},
        f"flexible atoms: {flexible or 'none'}; trios: "
        + ("; ".join(",".join(t) for t in trios) or "none"),
    )
    return OK if trios else FALSE


def cmd_split(args) -> int:
    af = _load(args.file)
    mult: dict[str, int] = {}
    if args.mult:
        for item in args.mult.split(","):
            a, _, m = item.partition("=")
            try:
                mult[a] = int(m)
            except ValueError:
                return _usage_error(f"bad multiplicity item {item!r}")
    try:
        res = split_algebra(SplitSpec(af.algebra, mult))
    except ValueError as e:
        return _usage_error(str(e))
    text = files.serialize_algebra(
        res.algebra,
        name=f"{af.name}-split",
        meta={"cover": " ".join(f"{p}={c}" for p, c in sorted(res.cover.items()))},
    )
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_thin(args) -> int:
    af = _load(args.file)
    part = _partition_from_file(af)
    try:
        spec = ThinnedSpec(af.algebra, part)
        frag = build_fragment(spec, args.n, args.mode)
    except (StructureError, ValueError) as e:
        return _usage_error(str(e))
    except FragmentClosureError as e:
        _emit(args, {"closed": False, "error": str(e)}, f"closure failed: {e}")
        return FALSE
    text = files.serialize_algebra(
        frag.algebra,
        name=f"{af.name}-{args.mode}-{args.n}",
        meta={"spec": spec.spec_hash(), "n": str(args.n), "kind": args.mode},
    )
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_rep(args) -> int:
    if args.colors is not None:
        coloring = mono_free_search(args.colors, args.n)
        found = coloring is not None
        _emit(
            args,
            {"found": found, "colors": args.colors, "n": args.n},
            f"{'found' if found else 'no'} {args.colors}-coloring of K_{args.n} "
            "without monochrome triangles",
        )
        return OK if found else FALSE
    if args.modulus is not None:
        if not args.partition:
            return _usage_error("--modulus requires --partition")
        try:
            with open(args.partition) as fh:
                classes = files.parse_partition(fh.read())
        except OSError as e:
            return _usage_error(f"cannot read {args.partition}: {e.strerror}")
        except files.FormatError as e:
            return _usage_error(str(e))
        target = _load(args.file).algebra if args.file else None
        try:
            ident = (
                next(iter(target.identity_element)) if target is not None else "1'"
            )
            lab, induced = cyclic_group_labeling(args.modulus, classes, ident)
        except StructureError as e:
            return _usage_error(str(e))
        rep = verify_representation(target if target is not None else induced, lab)
        _emit(
            args,
            rep.to_dict(),
            "complete square representation ✓"
            if rep.is_complete_square
            else f"failed: {rep.counterexamples[:1]}",
        )
        return OK if rep.is_complete_square else FALSE
    if not args.file:
        return _usage_error("rep needs an algebra file, --modulus, or --colors")
    af = _load(args.file)
    try:
        _, trios = find_flexible(af.algebra)
    except ValueError as e:
        return _usage_error(str(e))
    if not trios:
        return _usage_error("no flexible trio")
    result = build_representation(af.algebra, trios[0], args.points, args.rounds)
    rep = verify_representation(af.algebra, result.labeling)
    _emit(
        args,
        {
            "points": result.labeling.n,
            "defects": [list(d) for d in result.defects],
            "sound": rep.sound,
        },
        f"{result.labeling.n} points, {len(result.defects)} defects, "
        f"sound {'✓' if rep.sound else '✗'}",
    )
    return OK if rep.sound and not result.defects else FALSE


def cmd_basis(args) -> int:
    af = _load(args.file)
    try:
        ms = enumerate_basic_matrices(af.algebra, args.k)
        if args.kind == "rel":
            ok, witness = check_relational_basis(af.algebra, args.k, ms)
        else:
            ok, witness = check_cylindric_basis(af.algebra, args.k, ms)
    except ValueError as e:
        return _usage_error(str(e))
    _emit(
        args,
        {"kind": args.kind, "k": args.k, "matrices": len(ms), "basis": ok,
         "witness": repr(witness) if witness else None},
        f"{len(ms)} matrices; {args.kind} basis "
        + ("✓" if ok else f"✗ ({witness[0]})"),
    )
    return OK if ok else FALSE


def cmd_pairprod(args) -> int:
    af = _load(args.file)
    try:
        rep = pair_product_condition(af.algebra, args.n, seed=args.seed)
    except ValueError as e:
        return _usage_error(str(e))
    _emit(
        args,
        rep.to_dict(),
        f"pair products nonzero: {rep.holds} ({rep.mode}, {rep.checked} checked)",
    )
    return OK if rep.holds else FALSE


def cmd_ca(args) -> int:
    af = _load(args.file)
    try:
        ms = enumerate_basic_matrices(af.algebra, args.k)
        _, report = build_ca(af.algebra, args.k, ms)
    except ValueError as e:
        return _usage_error(str(e))
    _emit(
        args,
        report.to_dict(),
        "cylindric axioms ✓"
        if report.passed
        else f"failed: {[ax for ax, _ in report.failures]}",
    )
    return OK if report.passed else FALSE


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relalg")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generate an algebra file")
    g.add_argument("family", choices=["e23", "subalg"])
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--alpha", type=int, default=0)
    g.add_argument("--beta", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="axiom report for an algebra file")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("special", help="special-extension check (needs block lines)")
    s.add_argument("file")
    s.set_defaults(func=cmd_special)

    t = sub.add_parser("trio", help="flexible atoms and trios")
    t.add_argument("file")
    t.set_defaults(func=cmd_trio)

    sp = sub.add_parser("split", help="split diversity atoms by multiplicities")
    sp.add_argument("file")
    sp.add_argument("--mult", help="comma list a=m")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_split)

    th = sub.add_parser("thin", help="finite fragment of the thinned splitting")
    th.add_argument("file")
    th.add_argument("--n", type=int, required=True)
    th.add_argument("--mode", choices=["bn", "dn"], required=True)
    th.add_argument("-o", "--output")
    th.set_defaults(func=cmd_thin)

    r = sub.add_parser("rep", help="build or verify representations")
    r.add_argument("file", nargs="?")
    r.add_argument("--points", type=int, default=40)
    r.add_argument("--rounds", type=int, default=1)
    r.add_argument("--modulus", type=int)
    r.add_argument("--partition", help="residue-class file for cyclic labelings")
    r.add_argument("--colors", type=int)
    r.add_argument("--n", type=int, default=13)
    r.set_defaults(func=cmd_rep)

    b = sub.add_parser("basis", help="relational/cylindric basis check on B_k")
    b.add_argument("file")
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--kind", choices=["rel", "cyl"], default="cyl")
    b.set_defaults(func=cmd_basis)

    pp = sub.add_parser("pairprod", help="nonzero meets of diversity pair products")
    pp.add_argument("file")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--seed", type=int, default=0)
    pp.set_defaults(func=cmd_pairprod)

    ca = sub.add_parser("ca", help="cylindric axioms of Ca(B_k)")
    ca.add_argument("file")
    ca.add_argument("--k", type=int, default=3)
    ca.set_defaults(func=cmd_ca)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE
    except OSError as e:
        return _usage_error(str(e))


if __name__ == "__main__":
    sys.exit(main())
