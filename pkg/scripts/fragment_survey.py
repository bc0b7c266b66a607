#!/usr/bin/env python3
"""Survey the finite fragments of the thinned splitting of E23(7) over
the (alpha, beta) = (0, 3) block subalgebra: atom counts, axiom status,
flexible trios, and the base-algebra embedding, for n = 0..N.

Usage: python3 scripts/fragment_survey.py [N]
"""

import sys

from relalg.families import build_e23, e23_subalgebra, find_flexible
from relalg.thinned import ThinnedSpec, build_fragment, verify_base_embedding


def main(nmax=3):
    spec = ThinnedSpec(build_e23(7), e23_subalgebra(7, 0, 3))
    print(f"spec hash: {spec.spec_hash()}")
    print(f"{'kind':>4} {'n':>2} {'atoms':>5} {'RA':>3}  trios")
    for n in range(nmax + 1):
        for kind in ("bn", "dn"):
            frag = build_fragment(spec, n, kind)
            _, trios = find_flexible(frag.algebra)
            shown = "; ".join(",".join(t) for t in trios) or "-"
            print(f"{kind:>4} {n:>2} {len(frag.algebra.atoms):>5} "
                  f"{'yes' if frag.report.is_ra else 'NO':>3}  {shown}")
    for n in range(nmax + 1):
        ok, _, witness = verify_base_embedding(spec, n)
        print(f"base embeds into D({n}): {ok}" + ("" if ok else f"  {witness}"))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
