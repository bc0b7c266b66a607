#!/usr/bin/env python3
"""Grow a finite square labeling of the (0, 3) block subalgebra of E23(7)
by trio-driven one-point extensions, then verify it and report any
unwitnessed obligations.

Usage: python3 scripts/representation_demo.py [points] [rounds]
"""

import sys

from relalg.families import e23_subalgebra, find_flexible
from relalg.represent import build_representation, verify_representation


def main(points=40, rounds=1):
    alg, _ = e23_subalgebra(7, 0, 3).block_algebra()
    flexible, trios = find_flexible(alg)
    print(f"flexible atoms: {flexible}; trio: {trios[0]}")
    res = build_representation(alg, trios[0], points=points, rounds=rounds)
    rep = verify_representation(alg, res.labeling)
    print(f"points used: {res.labeling.n} / {points} (rounds run: {res.rounds_run})")
    print(f"sound: {rep.sound}  saturated: {rep.saturated}  "
          f"surjective: {rep.surjective}")
    print(f"defects: {len(res.defects)}")
    for d in res.defects[:10]:
        print(f"  unwitnessed: {d}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
